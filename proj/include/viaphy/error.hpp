#pragma once

#include <stdexcept>
#include <string>

namespace viaphy {

// Input text could not be parsed. line/column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, int line = 0, int column = 0)
      : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg;
  }

  int line_;
  int column_;
};

// A structurally well-formed input violated a model invariant, or an
// operation was applied to an instance class it does not support.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration or size limit was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace viaphy
