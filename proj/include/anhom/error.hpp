#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anhom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two values built over different sample spaces are combined.
class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("operands belong to different sample spaces") {}
};

/// Raised when an enumeration would exceed one of the size guards.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Syntax error in event, coevent or number text. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error("column " + std::to_string(column) + ": " + message), column_(column), detail_(message) {}

  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t column_;
  std::string detail_;
};

}  // namespace anhom
