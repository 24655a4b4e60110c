#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deco {

/// Root of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value or change does not match the structure of its type.
class ConformanceError : public Error {
 public:
  using Error::Error;
};

/// A term violates a typing rule, or a name does not resolve.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an argument of the wrong kind.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Duplicate or invalid registration, or registration after freeze.
class RegistryError : public Error {
 public:
  using Error::Error;
};

/// Evaluation would create a container with infinitely many non-default
/// entries.
class FiniteSupportError : public Error {
 public:
  using Error::Error;
};

/// The input breaks a finite-support precondition: a non-default replicate
/// argument or filter fallback over an infinite shape.
class InputPreconditionError : public FiniteSupportError {
 public:
  using FiniteSupportError::FiniteSupportError;
};

/// Malformed structural input (e.g. a path map with missing ancestors).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace deco
