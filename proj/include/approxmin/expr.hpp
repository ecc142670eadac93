#pragma once

#include "approxmin/ext_real.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace approxmin {

enum class ExprKind {
  kConstant,
  kVariable,
  kSum,
  kDifference,
  kProduct,
  kQuotient,
  kPower,
  kAbs,
  kSqrt,
  kMin,
  kMax,
  kNorm,
};

/// Expression tree node. Values are immutable once built; equality is
/// structural, which is what the parse/serialize round trip is checked
/// against.
struct Expr {
  ExprKind kind = ExprKind::kConstant;
  double value = 0.0;      // kConstant; may be +inf
  std::size_t index = 0;   // kVariable, 0-based
  std::vector<Expr> children;

  static Expr constant(double v);
  static Expr variable(std::size_t i);
  static Expr binary(ExprKind kind, Expr lhs, Expr rhs);
  static Expr call(ExprKind kind, std::vector<Expr> args);

  bool operator==(const Expr&) const = default;
};

ExtReal evaluate(const Expr& e, std::span<const double> x);

/// Canonical text form; parsing it yields a structurally equal tree.
std::string to_string(const Expr& e);

/// True when the tree only combines affine pieces through +, -, scaling,
/// abs, min and max.
bool is_piecewise_linear(const Expr& e);

/// Largest variable index used plus one (0 for constant trees).
std::size_t arity(const Expr& e);

bool depends_on_variables(const Expr& e);

}  // namespace approxmin
