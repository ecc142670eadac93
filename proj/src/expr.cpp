#include "approxmin/expr.hpp"

#include "approxmin/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace approxmin {

Expr Expr::constant(double v) { return Expr{ExprKind::kConstant, v, 0, {}}; }

Expr Expr::variable(std::size_t i) { return Expr{ExprKind::kVariable, 0.0, i, {}}; }

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs) {
  Expr e{kind, 0.0, 0, {}};
  e.children.reserve(2);
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(ExprKind kind, std::vector<Expr> args) {
  return Expr{kind, 0.0, 0, std::move(args)};
}

namespace {

ExtReal quotient(ExtReal a, ExtReal b) {
  if (b.is_infinite()) throw EvalError("division by +inf");
  if (b.value() == 0.0) throw EvalError("division by zero");
  if (a.is_infinite()) {
    if (b.value() > 0) return ExtReal::infinity();
    throw EvalError("+inf divided by a negative number");
  }
  return ExtReal(a.value() / b.value());
}

ExtReal power(ExtReal base, ExtReal exponent) {
  if (exponent.is_infinite()) throw EvalError("+inf exponent");
  const double p = exponent.value();
  if (base.is_infinite()) {
    if (p > 0) return ExtReal::infinity();
    return ExtReal(p == 0 ? 1.0 : 0.0);
  }
  const double b = base.value();
  if (b < 0 && std::trunc(p) != p) throw EvalError("negative base with non-integer exponent");
  if (b == 0 && p < 0) throw EvalError("division by zero in power");
  return ExtReal(std::pow(b, p));
}

}  // namespace

ExtReal evaluate(const Expr& e, std::span<const double> x) {
  switch (e.kind) {
    case ExprKind::kConstant:
      return ExtReal(e.value);
    case ExprKind::kVariable:
      if (e.index >= x.size()) throw DimensionError(e.index + 1, x.size());
      return ExtReal(x[e.index]);
    case ExprKind::kSum:
      return evaluate(e.children[0], x) + evaluate(e.children[1], x);
    case ExprKind::kDifference:
      return evaluate(e.children[0], x) - evaluate(e.children[1], x);
    case ExprKind::kProduct:
      return evaluate(e.children[0], x) * evaluate(e.children[1], x);
    case ExprKind::kQuotient:
      return quotient(evaluate(e.children[0], x), evaluate(e.children[1], x));
    case ExprKind::kPower:
      return power(evaluate(e.children[0], x), evaluate(e.children[1], x));
    case ExprKind::kAbs: {
      const ExtReal a = evaluate(e.children[0], x);
      return a.is_infinite() ? a : ExtReal(std::abs(a.value()));
    }
    case ExprKind::kSqrt: {
      const ExtReal a = evaluate(e.children[0], x);
      if (a.value() < 0) throw EvalError("sqrt of negative argument");
      return ExtReal(std::sqrt(a.value()));
    }
    case ExprKind::kMin:
    case ExprKind::kMax: {
      ExtReal best = evaluate(e.children[0], x);
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        const ExtReal v = evaluate(e.children[i], x);
        if (e.kind == ExprKind::kMin ? v < best : v > best) best = v;
      }
      return best;
    }
    case ExprKind::kNorm: {
      double sq = 0.0;
      for (const Expr& c : e.children) {
        const ExtReal v = evaluate(c, x);
        if (v.is_infinite()) return v;
        sq += v.value() * v.value();
      }
      return ExtReal(std::sqrt(sq));
    }
  }
  throw EvalError("unknown expression kind");
}

namespace {

std::string number(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  return v < 0 || std::signbit(v) ? "(" + s + ")" : s;
}

const char* function_name(ExprKind k) {
  switch (k) {
    case ExprKind::kAbs: return "abs";
    case ExprKind::kSqrt: return "sqrt";
    case ExprKind::kMin: return "min";
    case ExprKind::kMax: return "max";
    case ExprKind::kNorm: return "norm";
    default: return "?";
  }
}

const char* infix(ExprKind k) {
  switch (k) {
    case ExprKind::kSum: return " + ";
    case ExprKind::kDifference: return " - ";
    case ExprKind::kProduct: return " * ";
    case ExprKind::kQuotient: return " / ";
    case ExprKind::kPower: return " ^ ";
    default: return nullptr;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  if (e.kind == ExprKind::kConstant) return number(e.value);
  if (e.kind == ExprKind::kVariable) return "x" + std::to_string(e.index + 1);
  if (const char* op = infix(e.kind)) {
    return "(" + to_string(e.children[0]) + op + to_string(e.children[1]) + ")";
  }
  std::string s = function_name(e.kind);
  s += '(';
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) s += ", ";
    s += to_string(e.children[i]);
  }
  s += ')';
  return s;
}

bool depends_on_variables(const Expr& e) {
  if (e.kind == ExprKind::kVariable) return true;
  return std::any_of(e.children.begin(), e.children.end(),
                     [](const Expr& c) { return depends_on_variables(c); });
}

bool is_piecewise_linear(const Expr& e) {
  if (!depends_on_variables(e)) return true;
  const auto all_pl = [&] {
    return std::all_of(e.children.begin(), e.children.end(),
                       [](const Expr& c) { return is_piecewise_linear(c); });
  };
  switch (e.kind) {
    case ExprKind::kVariable:
      return true;
    case ExprKind::kSum:
    case ExprKind::kDifference:
    case ExprKind::kAbs:
    case ExprKind::kMin:
    case ExprKind::kMax:
      return all_pl();
    case ExprKind::kProduct:
      return all_pl() && (!depends_on_variables(e.children[0]) ||
                          !depends_on_variables(e.children[1]));
    case ExprKind::kQuotient:
      return all_pl() && !depends_on_variables(e.children[1]);
    default:
      return false;
  }
}

std::size_t arity(const Expr& e) {
  std::size_t n = e.kind == ExprKind::kVariable ? e.index + 1 : 0;
  for (const Expr& c : e.children) n = std::max(n, arity(c));
  return n;
}

}  // namespace approxmin
