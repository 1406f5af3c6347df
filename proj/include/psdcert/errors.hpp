#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psdcert {

// Wrong dimension, index out of range, malformed index set.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Asymmetric input where a symmetric matrix is required.
class SymmetryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation's mathematical precondition does not hold for the given input
// (for example a corner interval requested while an overlapping block is not
// positive definite).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Line and column (1-based) of a byte offset.
inline ParseError parse_error_at(std::string_view text, std::size_t offset, const std::string& what) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(what, line, column);
}

}  // namespace psdcert
