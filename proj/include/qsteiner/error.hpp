#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsteiner {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or ambient dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix that had to be invertible was not.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A configured guard, cap, or bound was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

// An internal identity that must hold exactly did not (signals a bug or corrupt input).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed text input; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qsteiner
