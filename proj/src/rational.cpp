#include "totcol/rational.hpp"

#include <cctype>

#include "totcol/error.hpp"

namespace totcol {

namespace {

boost::multiprecision::cpp_int parse_int(const std::string& s, const std::string& whole) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw InputError("malformed rational '" + whole + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw InputError("malformed rational '" + whole + "'");
  return boost::multiprecision::cpp_int(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, s));
  auto num = parse_int(s.substr(0, slash), s);
  auto den = parse_int(s.substr(slash + 1), s);
  if (den <= 0) throw InputError("rational '" + s + "' needs a positive denominator");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace totcol
