#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace approxmin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the function-spec and problem-spec readers. Line and column are
/// 1-based; both are zero when the error has no source position.
class ParseError : public Error {
 public:
  enum class Code { kSyntax, kDimension, kSqrtDomain, kSchema };

  ParseError(Code code, const std::string& what, std::size_t line = 0,
             std::size_t column = 0);

  Code code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Code code_;
  std::size_t line_;
  std::size_t column_;
};

class DimensionError : public Error {
 public:
  DimensionError(std::size_t expected, std::size_t actual);
};

/// A partial operation was applied outside its domain (sqrt of a negative
/// number, division by zero, +inf inside a difference, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

class NotLipschitzError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine hit its iteration cap before meeting its tolerance.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace approxmin
