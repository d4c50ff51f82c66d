#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coneforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad dimension, inadmissible
/// catalog parameter, degenerate metric, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero") {}
};

/// Malformed text; `position` is the 0-based offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Two independent routes disagreed; signals a bug or an input that slipped
/// past a precondition.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace coneforge
