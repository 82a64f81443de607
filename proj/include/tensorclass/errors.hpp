#pragma once

#include <stdexcept>
#include <string>

namespace tensorclass {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimensions or index ranges that do not fit together.
struct ShapeError : Error {
  using Error::Error;
};

/// Input outside the domain of an operation (bad parameters, empty inputs).
struct DomainError : Error {
  using Error::Error;
};

/// A documented hypothesis of an operation does not hold (e.g. conciseness).
struct PreconditionError : Error {
  using Error::Error;
};

/// An internal certificate failed verification. Always a bug.
struct InvariantError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace tensorclass
