#include "approxmin/function.hpp"

#include "approxmin/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

namespace approxmin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Tok {
  kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kComma,
  kSemicolon, kColon, kAssign, kLess, kLessEq, kGreater, kGreaterEq, kEqual, kNotEqual, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.kind = Tok::kIdent;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else {
        lex_symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void lex_number(Token& t) {
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first)
      throw ParseError(ParseError::Code::kSyntax, "malformed number", line_, col_);
    const auto len = static_cast<std::size_t>(ptr - first);
    t.kind = Tok::kNumber;
    t.number = v;
    t.text = std::string(first, len);
    for (std::size_t i = 0; i < len; ++i) advance();
  }

  void lex_symbol(Token& t) {
    const char c = src_[pos_];
    const char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    auto two = [&](Tok k) {
      t.kind = k;
      t.text = std::string(src_.substr(pos_, 2));
      advance();
      advance();
    };
    auto one = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      advance();
    };
    switch (c) {
      case '+': return one(Tok::kPlus);
      case '-': return one(Tok::kMinus);
      case '*': return one(Tok::kStar);
      case '/': return one(Tok::kSlash);
      case '^': return one(Tok::kCaret);
      case '(': return one(Tok::kLParen);
      case ')': return one(Tok::kRParen);
      case ',': return one(Tok::kComma);
      case ';': return one(Tok::kSemicolon);
      case ':': return one(Tok::kColon);
      case '<': return next == '=' ? two(Tok::kLessEq) : one(Tok::kLess);
      case '>': return next == '=' ? two(Tok::kGreaterEq) : one(Tok::kGreater);
      case '=': return next == '=' ? two(Tok::kEqual) : one(Tok::kAssign);
      case '!':
        if (next == '=') return two(Tok::kNotEqual);
        break;
      default:
        break;
    }
    throw ParseError(ParseError::Code::kSyntax, std::string("unexpected character '") + c + "'",
                     line_, col_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// --- interval bounds used to reject sqrt arguments no guard protects ---

struct Interval {
  double lo = -kInf;
  double hi = kInf;
};

using Box = std::vector<Interval>;

Interval hull_of_products(double a, double b, double c, double d) {
  const auto mul = [](double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;  // 0 * inf in interval sense
    return x * y;
  };
  const double v[] = {mul(a, c), mul(a, d), mul(b, c), mul(b, d)};
  return {*std::min_element(v, v + 4), *std::max_element(v, v + 4)};
}

Interval bound(const Expr& e, const Box& box);

Interval square(Interval a) {
  if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
  if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
  return {0.0, std::max(a.lo * a.lo, a.hi * a.hi)};
}

Interval bound(const Expr& e, const Box& box) {
  const auto child = [&](std::size_t i) { return bound(e.children[i], box); };
  switch (e.kind) {
    case ExprKind::kConstant:
      return {e.value, e.value};
    case ExprKind::kVariable:
      return e.index < box.size() ? box[e.index] : Interval{};
    case ExprKind::kSum: {
      Interval a = child(0), b = child(1);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case ExprKind::kDifference: {
      Interval a = child(0), b = child(1);
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case ExprKind::kProduct: {
      if (e.children[0] == e.children[1]) return square(child(0));
      Interval a = child(0), b = child(1);
      return hull_of_products(a.lo, a.hi, b.lo, b.hi);
    }
    case ExprKind::kQuotient: {
      Interval a = child(0), b = child(1);
      if (b.lo > 0 || b.hi < 0)
        return hull_of_products(a.lo, a.hi, 1.0 / b.hi, 1.0 / b.lo);
      return {};
    }
    case ExprKind::kPower: {
      const Expr& p = e.children[1];
      if (p.kind == ExprKind::kConstant && std::trunc(p.value) == p.value && p.value >= 0) {
        const Interval a = child(0);
        const double k = p.value;
        if (std::fmod(k, 2.0) == 0.0) {
          const Interval s = square(a);
          return {std::pow(s.lo, k / 2), std::pow(s.hi, k / 2)};
        }
        return {std::pow(a.lo, k), std::pow(a.hi, k)};
      }
      const Interval a = child(0);
      if (a.lo >= 0) return {0.0, kInf};
      return {};
    }
    case ExprKind::kAbs: {
      Interval a = child(0);
      if (a.lo >= 0) return a;
      if (a.hi <= 0) return {-a.hi, -a.lo};
      return {0.0, std::max(-a.lo, a.hi)};
    }
    case ExprKind::kSqrt: {
      Interval a = child(0);
      return {std::sqrt(std::max(a.lo, 0.0)), std::sqrt(std::max(a.hi, 0.0))};
    }
    case ExprKind::kNorm:
      return {0.0, kInf};
    case ExprKind::kMin:
    case ExprKind::kMax: {
      Interval r = child(0);
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        Interval c = child(i);
        if (e.kind == ExprKind::kMin) {
          r = {std::min(r.lo, c.lo), std::min(r.hi, c.hi)};
        } else {
          r = {std::max(r.lo, c.lo), std::max(r.hi, c.hi)};
        }
      }
      return r;
    }
  }
  return {};
}

CmpOp mirror(CmpOp op) {
  switch (op) {
    case CmpOp::kLess: return CmpOp::kGreater;
    case CmpOp::kLessEq: return CmpOp::kGreaterEq;
    case CmpOp::kGreater: return CmpOp::kLess;
    case CmpOp::kGreaterEq: return CmpOp::kLessEq;
    default: return op;
  }
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::kLess: return CmpOp::kGreaterEq;
    case CmpOp::kLessEq: return CmpOp::kGreater;
    case CmpOp::kGreater: return CmpOp::kLessEq;
    case CmpOp::kGreaterEq: return CmpOp::kLess;
    case CmpOp::kEqual: return CmpOp::kNotEqual;
    case CmpOp::kNotEqual: return CmpOp::kEqual;
  }
  return op;
}

/// Reads `x_i op c` (either orientation) into an (index, op, c) triple.
std::optional<std::tuple<std::size_t, CmpOp, double>> variable_bound(const Comparison& c) {
  const auto constant_value = [](const Expr& e) -> std::optional<double> {
    if (depends_on_variables(e)) return std::nullopt;
    try {
      return evaluate(e, {}).value();
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (c.lhs.kind == ExprKind::kVariable) {
    if (auto v = constant_value(c.rhs)) return std::tuple{c.lhs.index, c.op, *v};
  }
  if (c.rhs.kind == ExprKind::kVariable) {
    if (auto v = constant_value(c.lhs)) return std::tuple{c.rhs.index, mirror(c.op), *v};
  }
  return std::nullopt;
}

void tighten(Box& box, std::size_t i, CmpOp op, double c) {
  if (i >= box.size()) return;
  Interval& iv = box[i];
  switch (op) {
    case CmpOp::kLess:
    case CmpOp::kLessEq:
      iv.hi = std::min(iv.hi, c);
      break;
    case CmpOp::kGreater:
    case CmpOp::kGreaterEq:
      iv.lo = std::max(iv.lo, c);
      break;
    case CmpOp::kEqual:
      iv.lo = std::max(iv.lo, c);
      iv.hi = std::min(iv.hi, c);
      break;
    case CmpOp::kNotEqual:
      break;
  }
}

bool guard_forces_nonnegative(const Guard& g, const Expr& arg) {
  const Expr zero = Expr::constant(0.0);
  for (const Comparison& c : g.terms) {
    const bool ge = c.op == CmpOp::kGreaterEq || c.op == CmpOp::kGreater;
    const bool le = c.op == CmpOp::kLessEq || c.op == CmpOp::kLess;
    // arg >= 0, 0 <= arg
    if ((ge && c.lhs == arg && c.rhs == zero) || (le && c.rhs == arg && c.lhs == zero)) return true;
    // L >= R with arg == L - R; R <= L likewise
    if (arg.kind == ExprKind::kDifference) {
      const Expr& l = arg.children[0];
      const Expr& r = arg.children[1];
      if ((ge && c.lhs == l && c.rhs == r) || (le && c.lhs == r && c.rhs == l)) return true;
    }
  }
  return false;
}

void collect_sqrt(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == ExprKind::kSqrt) out.push_back(&e.children[0]);
  for (const Expr& c : e.children) collect_sqrt(c, out);
}

void check_sqrt_sites(const Expr& e, const Guard& guard, const Box& box, std::size_t line,
                      std::size_t column) {
  std::vector<const Expr*> args;
  collect_sqrt(e, args);
  for (const Expr* a : args) {
    if (bound(*a, box).lo >= 0) continue;
    if (guard_forces_nonnegative(guard, *a)) continue;
    throw ParseError(ParseError::Code::kSqrtDomain,
                     "sqrt argument " + to_string(*a) + " is not kept nonnegative by its guard",
                     line, column);
  }
}

// --- parser ---

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  PiecewiseFn parse() {
    expect_ident("n");
    expect(Tok::kAssign, "'='");
    const Token& d = expect(Tok::kNumber, "dimension");
    if (d.number < 1 || std::trunc(d.number) != d.number)
      throw ParseError(ParseError::Code::kDimension, "dimension must be a positive integer",
                       d.line, d.column);
    dim_ = static_cast<std::size_t>(d.number);
    expect(Tok::kSemicolon, "';'");

    // Bounds implied by earlier single-comparison guards having failed.
    Box carried(dim_);
    std::vector<PiecewiseFn::Branch> branches;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::kIdent && t.text == "else") {
        next();
        expect(Tok::kColon, "':'");
        const Token& body_tok = peek();
        Expr body = expression();
        check_sqrt_sites(body, Guard{}, carried, body_tok.line, body_tok.column);
        if (peek().kind == Tok::kSemicolon) next();
        if (peek().kind != Tok::kEnd) fail("trailing input after else branch");
        return PiecewiseFn(dim_, std::move(branches), std::move(body));
      }
      if (t.kind == Tok::kEnd) fail("missing 'else' branch");
      const Token& guard_tok = peek();
      Guard g = guard();
      expect(Tok::kColon, "':'");
      const Token& body_tok = peek();
      Expr body = expression();
      expect(Tok::kSemicolon, "';'");

      Box local = carried;
      for (const Comparison& c : g.terms) {
        if (auto b = variable_bound(c)) tighten(local, std::get<0>(*b), std::get<1>(*b), std::get<2>(*b));
      }
      for (const Comparison& c : g.terms) {
        check_sqrt_sites(c.lhs, Guard{}, carried, guard_tok.line, guard_tok.column);
        check_sqrt_sites(c.rhs, Guard{}, carried, guard_tok.line, guard_tok.column);
      }
      check_sqrt_sites(body, g, local, body_tok.line, body_tok.column);
      if (g.terms.size() == 1) {
        if (auto b = variable_bound(g.terms.front()))
          tighten(carried, std::get<0>(*b), negate(std::get<1>(*b)), std::get<2>(*b));
      }
      branches.push_back({std::move(g), std::move(body)});
    }
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Code::kSyntax, msg, peek().line, peek().column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return next();
  }

  void expect_ident(const char* name) {
    if (peek().kind != Tok::kIdent || peek().text != name)
      fail(std::string("expected '") + name + "'");
    next();
  }

  Guard guard() {
    Guard g;
    g.terms.push_back(comparison());
    while (peek().kind == Tok::kIdent && peek().text == "and") {
      next();
      g.terms.push_back(comparison());
    }
    return g;
  }

  Comparison comparison() {
    Comparison c;
    c.lhs = expression();
    switch (peek().kind) {
      case Tok::kLess: c.op = CmpOp::kLess; break;
      case Tok::kLessEq: c.op = CmpOp::kLessEq; break;
      case Tok::kGreater: c.op = CmpOp::kGreater; break;
      case Tok::kGreaterEq: c.op = CmpOp::kGreaterEq; break;
      case Tok::kEqual: c.op = CmpOp::kEqual; break;
      case Tok::kNotEqual: c.op = CmpOp::kNotEqual; break;
      default: fail("expected a comparison operator");
    }
    next();
    c.rhs = expression();
    return c;
  }

  Expr expression() {
    Expr e = term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const ExprKind k = next().kind == Tok::kPlus ? ExprKind::kSum : ExprKind::kDifference;
      e = Expr::binary(k, std::move(e), term());
    }
    return e;
  }

  Expr term() {
    Expr e = unary();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      const ExprKind k = next().kind == Tok::kStar ? ExprKind::kProduct : ExprKind::kQuotient;
      e = Expr::binary(k, std::move(e), unary());
    }
    return e;
  }

  Expr unary() {
    if (peek().kind == Tok::kMinus) {
      const Token& t = next();
      Expr operand = unary();
      if (operand.kind == ExprKind::kConstant) {
        if (operand.value == kInf)
          throw ParseError(ParseError::Code::kSyntax, "-inf is not representable", t.line, t.column);
        return Expr::constant(-operand.value);
      }
      return Expr::binary(ExprKind::kDifference, Expr::constant(0.0), std::move(operand));
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().kind == Tok::kCaret) {
      next();
      return Expr::binary(ExprKind::kPower, std::move(base), unary());
    }
    return base;
  }

  Expr primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::kNumber:
        return Expr::constant(t.number);
      case Tok::kLParen: {
        Expr e = expression();
        expect(Tok::kRParen, "')'");
        return e;
      }
      case Tok::kIdent:
        return identifier(t);
      default:
        throw ParseError(ParseError::Code::kSyntax, "unexpected '" + t.text + "'", t.line, t.column);
    }
  }

  Expr identifier(const Token& t) {
    if (t.text == "inf") return Expr::constant(kInf);
    if (t.text.size() > 1 && t.text[0] == 'x' &&
        std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const std::size_t i = std::stoul(t.text.substr(1));
      if (i < 1 || i > dim_)
        throw ParseError(ParseError::Code::kDimension,
                         "variable " + t.text + " outside declared dimension " + std::to_string(dim_),
                         t.line, t.column);
      return Expr::variable(i - 1);
    }
    ExprKind k;
    std::size_t min_args = 1, max_args = std::numeric_limits<std::size_t>::max();
    if (t.text == "abs") {
      k = ExprKind::kAbs;
      max_args = 1;
    } else if (t.text == "sqrt") {
      k = ExprKind::kSqrt;
      max_args = 1;
    } else if (t.text == "min") {
      k = ExprKind::kMin;
    } else if (t.text == "max") {
      k = ExprKind::kMax;
    } else if (t.text == "norm") {
      k = ExprKind::kNorm;
    } else {
      throw ParseError(ParseError::Code::kSyntax, "unknown identifier '" + t.text + "'", t.line,
                       t.column);
    }
    expect(Tok::kLParen, "'('");
    std::vector<Expr> args;
    args.push_back(expression());
    while (peek().kind == Tok::kComma) {
      next();
      args.push_back(expression());
    }
    expect(Tok::kRParen, "')'");
    if (args.size() < min_args || args.size() > max_args)
      throw ParseError(ParseError::Code::kSyntax, t.text + ": wrong number of arguments", t.line,
                       t.column);
    return Expr::call(k, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t dim_ = 0;
};

const char* op_text(CmpOp op) {
  switch (op) {
    case CmpOp::kLess: return "<";
    case CmpOp::kLessEq: return "<=";
    case CmpOp::kGreater: return ">";
    case CmpOp::kGreaterEq: return ">=";
    case CmpOp::kEqual: return "==";
    case CmpOp::kNotEqual: return "!=";
  }
  return "?";
}

bool compare(ExtReal a, CmpOp op, ExtReal b) {
  switch (op) {
    case CmpOp::kLess: return a < b;
    case CmpOp::kLessEq: return a <= b;
    case CmpOp::kGreater: return a > b;
    case CmpOp::kGreaterEq: return a >= b;
    case CmpOp::kEqual: return a == b;
    case CmpOp::kNotEqual: return !(a == b);
  }
  return false;
}

}  // namespace

PiecewiseFn::PiecewiseFn(std::size_t dim, std::vector<Branch> branches, Expr fallback)
    : dim_(dim), branches_(std::move(branches)), fallback_(std::move(fallback)) {
  if (dim_ == 0) throw ParseError(ParseError::Code::kDimension, "dimension must be positive");
  std::size_t used = arity(fallback_);
  for (const Branch& b : branches_) {
    used = std::max(used, arity(b.body));
    for (const Comparison& c : b.guard.terms) used = std::max({used, arity(c.lhs), arity(c.rhs)});
  }
  if (used > dim_)
    throw ParseError(ParseError::Code::kDimension,
                     "expression uses x" + std::to_string(used) + " but dimension is " +
                         std::to_string(dim_));
}

bool holds(const Guard& g, std::span<const double> x) {
  return std::all_of(g.terms.begin(), g.terms.end(), [&](const Comparison& c) {
    return compare(evaluate(c.lhs, x), c.op, evaluate(c.rhs, x));
  });
}

ExtReal PiecewiseFn::operator()(std::span<const double> x) const {
  if (x.size() != dim_) throw DimensionError(dim_, x.size());
  for (const Branch& b : branches_) {
    if (holds(b.guard, x)) return evaluate(b.body, x);
  }
  return evaluate(fallback_, x);
}

bool PiecewiseFn::piecewise_linear() const {
  if (!is_piecewise_linear(fallback_)) return false;
  return std::all_of(branches_.begin(), branches_.end(),
                     [](const Branch& b) { return is_piecewise_linear(b.body); });
}

std::string PiecewiseFn::to_string() const {
  std::string s = "n=" + std::to_string(dim_) + ";";
  for (const Branch& b : branches_) {
    s += ' ';
    for (std::size_t i = 0; i < b.guard.terms.size(); ++i) {
      const Comparison& c = b.guard.terms[i];
      if (i) s += " and ";
      s += approxmin::to_string(c.lhs) + ' ' + op_text(c.op) + ' ' + approxmin::to_string(c.rhs);
    }
    s += " : " + approxmin::to_string(b.body) + " ;";
  }
  s += " else : " + approxmin::to_string(fallback_);
  return s;
}

PiecewiseFn parse_function(std::string_view text) {
  return Parser(Lexer(text).run()).parse();
}

double default_margin(const PiecewiseFn& f) { return f.piecewise_linear() ? 1e-12 : 1e-9; }

}  // namespace approxmin
