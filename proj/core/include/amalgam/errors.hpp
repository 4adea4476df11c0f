#pragma once

#include <stdexcept>
#include <string>

namespace amalgam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Never expected; the CLI maps it to exit code 3.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

}  // namespace amalgam
