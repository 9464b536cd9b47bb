#pragma once

#include <stdexcept>
#include <string>

namespace cyclodio {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (zero polynomial, bad degree, ...).
struct DomainError : Error {
  using Error::Error;
};

/// An exact-arithmetic identity that was expected to hold did not.
struct ArithmeticError : Error {
  using Error::Error;
};

struct NotSquarefreeError : DomainError {
  using DomainError::DomainError;
};

/// A stated precondition of a stage does not hold for this input.
struct PreconditionError : Error {
  using Error::Error;
};

/// Working precision was insufficient; retry with more bits.
struct PrecisionError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace cyclodio
