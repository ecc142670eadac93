#pragma once

#include "approxmin/expr.hpp"
#include "approxmin/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace approxmin {

enum class CmpOp { kLess, kLessEq, kGreater, kGreaterEq, kEqual, kNotEqual };

struct Comparison {
  Expr lhs;
  CmpOp op = CmpOp::kLessEq;
  Expr rhs;

  bool operator==(const Comparison&) const = default;
};

/// Conjunction of comparisons.
struct Guard {
  std::vector<Comparison> terms;

  bool operator==(const Guard&) const = default;
};

/// A function R^n -> R ∪ {+inf} given by guarded branches; the first branch
/// whose guard holds supplies the value, the fallback covers the rest.
///
/// Text form:
///
///     n=1; x1 >= 0 : -sqrt(x1) ; else : -x1
///
/// Variables are x1..xn. Expressions use + - * / ^, abs, sqrt, min, max,
/// norm (Euclidean norm of its arguments) and the literal `inf`.
class PiecewiseFn {
 public:
  struct Branch {
    Guard guard;
    Expr body;

    bool operator==(const Branch&) const = default;
  };

  PiecewiseFn(std::size_t dim, std::vector<Branch> branches, Expr fallback);

  std::size_t dim() const { return dim_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const Expr& fallback() const { return fallback_; }

  ExtReal operator()(std::span<const double> x) const;
  ExtReal operator()(const Point& x) const { return (*this)(as_span(x)); }

  bool piecewise_linear() const;

  std::string to_string() const;

  bool operator==(const PiecewiseFn&) const = default;

 private:
  std::size_t dim_;
  std::vector<Branch> branches_;
  Expr fallback_;
};

PiecewiseFn parse_function(std::string_view text);

bool holds(const Guard& g, std::span<const double> x);

/// Comparison margin for strict inequalities: 1e-12 on piecewise-linear
/// data, 1e-9 otherwise.
double default_margin(const PiecewiseFn& f);

}  // namespace approxmin
