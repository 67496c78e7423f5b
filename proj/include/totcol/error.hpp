#pragma once

#include <stdexcept>
#include <string>

namespace totcol {

// Malformed or inconsistent input (bad file, loop, duplicate edge, broken
// rotation system). The CLI maps these to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of a library operation was not met by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace totcol
