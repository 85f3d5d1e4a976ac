#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schurweyl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient sizes (columns, matrix dimensions).
class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument is out of range or otherwise malformed.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A structural invariant does not hold (fixed point, non-involution, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Operands carry incompatible coefficient rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A configured size limit would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed; `position()` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace schurweyl
