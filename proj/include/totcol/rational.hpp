#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace totcol {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "p/q" and "-p/q"; throws InputError otherwise.
Rational parse_rational(const std::string& s);
// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

}  // namespace totcol
