#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folkscope {

// Base of every exception thrown by the toolkit. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record. `line` is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Caller violated a precondition (bad parameter, unknown id, k < 2, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but numerically degenerate (zero variance, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace folkscope
