#include "approxmin/error.hpp"

namespace approxmin {

namespace {

std::string with_position(const std::string& what, std::size_t line, std::size_t column) {
  if (line == 0) return what;
  return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
}

}  // namespace

ParseError::ParseError(Code code, const std::string& what, std::size_t line, std::size_t column)
    : Error(with_position(what, line, column)), code_(code), line_(line), column_(column) {}

DimensionError::DimensionError(std::size_t expected, std::size_t actual)
    : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
            std::to_string(actual)) {}

}  // namespace approxmin
