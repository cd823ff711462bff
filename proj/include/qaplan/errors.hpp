#pragma once

#include <stdexcept>
#include <string>

namespace qaplan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A lookup fell outside the tabulated domain (no extrapolation).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A model evaluation produced a non-finite value or hit a singular input.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class InvalidTopology : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what
                       : what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qaplan
