#include "approxmin/corpus.hpp"
#include "approxmin/error.hpp"
#include "approxmin/problem.hpp"
#include "approxmin/sampling.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <functional>
#include <map>

using namespace approxmin;
using namespace testing;

TEST_CASE("parse: step function") {
  const PiecewiseFn f = fn("n=1; x1 <= 0 : x1 ; else : 1");
  CHECK(f.dim() == 1);
  CHECK(val(f, pt(-2)) == -2);
  CHECK(val(f, pt(3)) == 1);
  CHECK(val(f, pt(0)) == 0);
}

TEST_CASE("parse: constant and 2-d sum of abs") {
  CHECK(val(fn("n=1; else : 0"), pt(7)) == 0);
  CHECK(val(fn("n=2; else : abs(x1) + abs(x2)"), pt(1, -2)) == 3);
}

TEST_CASE("evaluate: spike, neg-sqrt, +inf default") {
  const PiecewiseFn spike = fn(kSpike);
  CHECK(val(spike, pt(0)) == 1);
  CHECK(val(spike, pt(1e-300)) == 0);
  CHECK(val(fn(kNegSqrt), pt(0.25)) == -0.5);
  CHECK(val(fn(kNegSqrt), pt(-3)) == 3);
  const PiecewiseFn g = fn("n=1; x1 >= 0 : x1 ; else : inf");
  CHECK(g(pt(-1)).is_infinite());
  CHECK(g(pt(2)).value() == 2);
}

TEST_CASE("evaluate: min, max, norm, power, quotient") {
  const PiecewiseFn f = fn("n=2; else : min(x1, x2) + max(x1, 2*x2) + norm(x1, x2) + x1^2 / 2");
  CHECK(val(f, pt(3, 4)) == doctest::Approx(3 + 8 + 5 + 4.5));
}

TEST_CASE("evaluate: errors") {
  CHECK_THROWS_AS(fn("n=1; else : 1 / x1")(pt(0)), EvalError);
  CHECK_THROWS_AS(fn("n=2; else : x1")(pt(1)), DimensionError);
}

TEST_CASE("parse errors carry kind and position") {
  try {
    fn("n=1; x1 <= : 1 ; else : 0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ParseError::Code::kSyntax);
    CHECK(e.line() == 1);
    CHECK(e.column() > 0);
  }
  try {
    fn("n=1;\nelse : x2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ParseError::Code::kDimension);
    CHECK(e.line() == 2);
  }
  try {
    fn("n=1; else : sqrt(x1)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ParseError::Code::kSqrtDomain);
  }
  CHECK_NOTHROW(fn("n=1; else : sqrt(abs(x1))"));
  CHECK_NOTHROW(fn("n=1; x1 >= 1 : sqrt(x1 - 1) ; else : 0"));
  CHECK_THROWS_AS(fn("n=0; else : 1"), ParseError);
  CHECK_THROWS_AS(fn("n=1; x1 <= 0 : 1"), ParseError);
}

TEST_CASE("first matching guard wins") {
  const PiecewiseFn f = fn("n=1; x1 >= 0 : 1 ; x1 >= -1 and x1 <= 5 : 2 ; else : 3");
  CHECK(val(f, pt(0)) == 1);
  CHECK(val(f, pt(-0.5)) == 2);
  CHECK(val(f, pt(-2)) == 3);
}

TEST_CASE("round trip over the corpus") {
  for (const ProblemSpec& s : load_corpus(APPROXMIN_CORPUS_DIR)) {
    for (const PiecewiseFn& f : s.objectives) {
      const PiecewiseFn g = parse_function(f.to_string());
      CHECK_MESSAGE(g == f, s.name << ": " << f.to_string());
    }
    for (const PiecewiseFn& f : s.constraints) CHECK(parse_function(f.to_string()) == f);
  }
}

TEST_CASE("evaluate agrees with hand-coded corpus functions") {
  const std::map<std::string, std::function<double(double)>> oracle = {
      {"spike", [](double x) { return x == 0 ? 1.0 : 0.0; }},
      {"neg-sqrt", [](double x) { return x >= 0 ? -std::sqrt(x) : -x; }},
      {"step-jump", [](double x) { return x <= 0 ? x : 1.0; }},
      {"tilted-unbounded", [](double x) { return x; }},
      {"tilted-unbounded-4", [](double x) { return x >= 0 ? x : 2 * x; }},
      {"lsc-step", [](double x) { return x <= 0 ? 0.0 : 1.0; }},
      {"parabola", [](double x) { return x * x; }},
      {"abs", [](double x) { return std::abs(x); }},
      {"shifted-abs", [](double x) { return std::abs(x - 0.37); }},
      {"pw-quad", [](double x) { return std::min((x + 1) * (x + 1), (x - 1) * (x - 1) + 0.5); }},
  };
  SamplePlan plan;
  for (const auto& [name, h] : oracle) {
    const ProblemSpec s = find_fixture(APPROXMIN_CORPUS_DIR, name);
    const PiecewiseFn& f = s.objectives.front();
    const bool exact = f.piecewise_linear();
    for (int i = 0; i < 1000; ++i) {
      const double x = -5 + 10 * counter_uniform(plan.seed, 99, static_cast<std::uint64_t>(i), 0);
      const double got = val(f, pt(x));
      if (exact) {
        CHECK_MESSAGE(got == h(x), name << " at " << x);
      } else {
        CHECK_MESSAGE(std::abs(got - h(x)) <= 1e-12 * std::max(1.0, std::abs(h(x))), name << " at " << x);
      }
    }
  }
}

TEST_CASE("membership") {
  CHECK(DomainSet::box({0}, {INFINITY}).contains(pt(0)));
  CHECK_FALSE(DomainSet::ball(pt(0), 1).contains(pt(1)));
  CHECK(DomainSet::ball(pt(0), 1, false).contains(pt(1)));
  CHECK(DomainSet::ball(pt(0), 1).contains(pt(0.999)));
  const DomainSet empty = DomainSet::intersection({DomainSet::box({0}, {INFINITY}), DomainSet::box({-INFINITY}, {-1})});
  for (double x : {-2.0, -1.0, -0.5, 0.0, 1.0}) CHECK_FALSE(empty.contains(pt(x)));
  CHECK_FALSE(DomainSet::box({0}, {1}, {true}, {false}).contains(pt(0)));
  CHECK(DomainSet::halfspace(pt(1, 1), 1).contains(pt(0.5, 0.5)));
  CHECK_FALSE(DomainSet::halfspace(pt(1, 1), 1).contains(pt(0.5, 0.6)));
}

TEST_CASE("membership in X ∩ B(x, delta) is the conjunction") {
  SamplePlan plan;
  const std::vector<DomainSet> sets = {DomainSet::box({0, 0}, {1, 1}), DomainSet::halfspace(pt(1, 1), 1),
                                       DomainSet::ball(pt(0, 0), 1, false)};
  const Point x = pt(0.5, 0.25);
  for (const DomainSet& X : sets) {
    for (double delta : {0.1, 1.0, 10.0}) {
      const DomainSet local = X & DomainSet::ball(x, delta);
      for (int i = 0; i < 200; ++i) {
        const Point y = pt(-2 + 4 * counter_uniform(3, 0, i, 0), -2 + 4 * counter_uniform(3, 0, i, 1));
        CHECK(local.contains(y) == (X.contains(y) && (y - x).norm() < delta));
      }
    }
  }
}

TEST_CASE("projection and bounding box") {
  CHECK(DomainSet::interval(0, 1).project(pt(2)).point[0] == 1);
  const Projection p = DomainSet::halfspace(pt(1, 1), 1).project(pt(1, 1));
  CHECK(p.point[0] == doctest::Approx(0.5));
  CHECK(p.point[1] == doctest::Approx(0.5));
  const Window w = default_window(DomainSet::box({0}, {INFINITY}));
  CHECK(w.lower[0] == 0);
  CHECK(w.upper[0] == 4);
}

TEST_CASE("problem spec parsing") {
  const ProblemSpec s = parse_problem(R"({"domain": {"kind": "box", "lower": [0], "upper": ["inf"]},
    "objectives": ["n=1; else : x1"], "candidates": [[0], [1]]})");
  CHECK(s.dim() == 1);
  CHECK(s.candidates.size() == 2);
  CHECK(s.X.contains(pt(1e9)));
  CHECK_THROWS_AS(parse_problem("{"), ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"objectives": ["n=1; else : 0"], "candidates": []})"), ParseError);
  try {
    parse_problem(R"({"domain": {"kind": "full", "dim": 2}, "objectives": ["n=1; else : 0"], "candidates": []})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ParseError::Code::kDimension);
  }
  const DomainSet X = parse_domain(domain_to_json(s.X));
  CHECK(domain_to_json(X) == domain_to_json(s.X));
}
