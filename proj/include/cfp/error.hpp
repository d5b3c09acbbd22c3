#pragma once

#include <stdexcept>
#include <string>

namespace cfp {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance, solution, LP or manifest text. `line()` is 1-based,
/// 0 when the problem is not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? what + " at line " + std::to_string(line) : what), line_(line) {}

  int line() const { return line_; }

  /// Same error with "<prefix>: " in front of the message, line kept.
  ParseError prefixed(const std::string& prefix) const { return ParseError(prefix + ": " + what(), line_, 0); }

private:
  ParseError(const std::string& full, int line, int) : Error(full), line_(line) {}

  int line_;
};

}  // namespace cfp
