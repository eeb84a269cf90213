#pragma once

#include <stdexcept>
#include <string>

namespace nlie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different fields or ambient dimensions.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured instance bound.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// A precondition on an algebraic input failed (not an ideal, not a derivation, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlie
