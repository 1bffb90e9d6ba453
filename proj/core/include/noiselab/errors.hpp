#pragma once

#include <stdexcept>
#include <string>

namespace noiselab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense 2^n table would exceed the configured dimension limit.
class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the operation's domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A semigroup element or law violates its structural invariants.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A support size, path count or subset count exceeds the configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two web maps cannot be composed because their lattice parities differ.
class ParityMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace noiselab
