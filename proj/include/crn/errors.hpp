#ifndef CRN_ERRORS_HPP
#define CRN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crn {

/// Invalid network construction (orphan complexes, self-loops, bad rates, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax or semantic error in a `.crn` file, with 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A numeric routine failed (ill-conditioning, singularity); distinct from
/// "the requested object does not exist", which is reported via empty optionals.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crn

#endif  // CRN_ERRORS_HPP
