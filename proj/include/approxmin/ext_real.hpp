#pragma once

#include <compare>
#include <limits>
#include <string>

namespace approxmin {

/// A value of R ∪ {+inf}. NaN and -inf are never representable: building one
/// throws EvalError.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v);  // NOLINT(google-explicit-constructor)

  static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return v_ != std::numeric_limits<double>::infinity(); }
  bool is_infinite() const { return !is_finite(); }

  /// Raw value; +inf for the extended point.
  double value() const { return v_; }

  /// Finite value; throws EvalError on +inf.
  double finite() const;

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

  std::string to_string() const;

 private:
  double v_ = 0.0;
};

/// Extended-real sum: inf + finite = inf, inf + inf = inf.
ExtReal operator+(ExtReal a, ExtReal b);

/// Difference; an infinite operand is an evaluation error.
ExtReal operator-(ExtReal a, ExtReal b);

/// Product; inf times a positive number is inf, inf times zero or a negative
/// number is an evaluation error.
ExtReal operator*(ExtReal a, ExtReal b);

}  // namespace approxmin
