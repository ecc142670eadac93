#include "approxmin/ext_real.hpp"

#include "approxmin/error.hpp"

#include <charconv>
#include <cmath>

namespace approxmin {

ExtReal::ExtReal(double v) : v_(v) {
  if (std::isnan(v)) throw EvalError("NaN is not an extended real");
  if (v == -std::numeric_limits<double>::infinity())
    throw EvalError("-inf is not representable");
}

double ExtReal::finite() const {
  if (!is_finite()) throw EvalError("expected a finite value, got +inf");
  return v_;
}

std::string ExtReal::to_string() const {
  if (!is_finite()) return "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v_);
  return std::string(buf, end);
}

ExtReal operator+(ExtReal a, ExtReal b) {
  if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
  return ExtReal(a.value() + b.value());
}

ExtReal operator-(ExtReal a, ExtReal b) {
  if (a.is_infinite() || b.is_infinite()) throw EvalError("+inf inside a difference");
  return ExtReal(a.value() - b.value());
}

ExtReal operator*(ExtReal a, ExtReal b) {
  if (a.is_infinite() || b.is_infinite()) {
    const double other = a.is_infinite() ? b.value() : a.value();
    if (other > 0) return ExtReal::infinity();
    throw EvalError("+inf multiplied by a non-positive number");
  }
  return ExtReal(a.value() * b.value());
}

}  // namespace approxmin
