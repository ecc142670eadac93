#include "approxmin/cone.hpp"
#include "approxmin/corpus.hpp"
#include "approxmin/error.hpp"
#include "approxmin/nonsmooth.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

using namespace approxmin;
using namespace testing;

namespace {

std::vector<Point> unit_directions(std::size_t dim, int count) {
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    if (dim == 1) {
      out.push_back(pt(k % 2 ? -1.0 : 1.0));
    } else {
      const double t = 2 * M_PI * k / count;
      out.push_back(pt(std::cos(t), std::sin(t)));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("lsc") {
  SamplePlan plan;
  const Verdict spike = check_lsc(fn(kSpike), pt(0), plan);
  CHECK(spike.fails());
  REQUIRE(spike.witness);
  CHECK(spike.witness->point[0] != 0);
  CHECK(val(fn(kSpike), spike.witness->point) == 0);
  CHECK(check_lsc(fn("n=1; else : 0"), pt(0.3), plan).holds());
  CHECK(check_lsc(fn(kStepJump), pt(0), plan).holds());
  CHECK(check_lsc(fn("n=1; x1 < 0 : x1 - 1 ; else : 0"), pt(0), plan).fails());
}

TEST_CASE("continuity") {
  SamplePlan plan;
  CHECK(check_continuity(fn(kStepJump), pt(0), plan).fails());
  CHECK(check_continuity(fn("n=1; else : abs(x1)"), pt(0), plan).holds());
}

TEST_CASE("local Lipschitz estimates") {
  SamplePlan plan;
  CHECK(local_lipschitz(fn(kStepJump), pt(-1), 0.5, plan) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(local_lipschitz(fn("n=1; else : 3"), pt(0), 1.0, plan) == 0);
  CHECK(local_lipschitz(fn("n=1; else : abs(x1)"), pt(0), 1.0, plan) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(local_lipschitz(fn("n=1; x1 >= 0 : x1 ; else : inf"), pt(0), 1.0, plan), NotLipschitzError);

  // |x| at 0: the estimate approaches 1 from below and never moves away as the radius shrinks.
  double prev = 0;
  for (double r : {1.0, 0.5, 0.1, 0.01}) {
    const double L = local_lipschitz(fn("n=1; else : abs(x1)"), pt(0), r, plan);
    CHECK(L <= 1 + 1e-12);
    CHECK(L >= prev - 1e-9);
    prev = L;
  }
}

TEST_CASE("Clarke directional derivative examples") {
  SamplePlan plan;
  const DirDeriv a = clarke_dirderiv(fn("n=1; else : abs(x1)"), pt(0), pt(1), plan);
  CHECK(std::abs(a.value - 1) <= 1e-6);
  const DirDeriv b = clarke_dirderiv(fn("n=1; else : -abs(x1)"), pt(0), pt(1), plan);
  CHECK(std::abs(b.value - 1) <= 1e-6);
  const DirDeriv c = clarke_dirderiv(fn("n=1; else : 3*x1"), pt(0.7), pt(-2), plan);
  CHECK(c.value == doctest::Approx(-6).epsilon(1e-12));
  CHECK(c.converged);
  const DirDeriv d = clarke_dirderiv(fn(kNegSqrt), pt(0), pt(1), plan);
  CHECK(d.diverging);
}

TEST_CASE("Clarke directional derivative: stage values are tail maxima") {
  SamplePlan plan;
  const DirDeriv d = clarke_dirderiv(fn("n=1; else : max(x1, 2*x1)"), pt(0), pt(-1), plan);
  for (std::size_t k = 1; k < d.stage_values.size(); ++k) CHECK(d.stage_values[k] <= d.stage_values[k - 1]);
  CHECK(d.stage_values.back() == d.value);
  CHECK(d.value == doctest::Approx(-1).epsilon(1e-9));
}

TEST_CASE("Clarke subdifferential examples") {
  SamplePlan plan;
  const SubdiffApprox a = clarke_subdiff(fn("n=1; else : abs(x1)"), pt(0), plan);
  CHECK(hausdorff(a.hull_vertices(), {pt(-1), pt(1)}) <= 0.05);
  const SubdiffApprox b = clarke_subdiff(fn("n=1; else : x1^2"), pt(1), plan);
  for (const Point& g : b.gradients) CHECK(std::abs(g[0] - 2) <= 1e-4);
  const SubdiffApprox c = clarke_subdiff(fn("n=1; else : max(x1, 2*x1)"), pt(0), plan);
  CHECK(hausdorff(c.hull_vertices(), {pt(1), pt(2)}) <= 0.05);
  CHECK_THROWS_AS(clarke_subdiff(fn(kNegSqrt), pt(0), plan), NotLipschitzError);
}

TEST_CASE("subdifferential estimates stay within the Lipschitz bound") {
  SamplePlan plan;
  for (const char* text : {"n=1; else : abs(x1)", "n=2; else : norm(x1, x2)", "n=2; else : max(x1 - x2, -x1)"}) {
    const PiecewiseFn f = fn(text);
    const Point x = Point::Zero(static_cast<Eigen::Index>(f.dim()));
    const double L = local_lipschitz(f, x, plan.radius(plan.stages - 1) * 4, plan);
    const SubdiffApprox s = clarke_subdiff(f, x, plan);
    REQUIRE_FALSE(s.gradients.empty());
    for (const Point& g : s.gradients) CHECK(g.norm() <= std::max(L, 1.0) * 1.5 + 1e-6);
  }
}

TEST_CASE("hull elements respect the directional derivative") {
  SamplePlan plan;
  for (const char* text : {"n=1; else : abs(x1)", "n=1; else : max(x1, 2*x1)", "n=2; else : norm(x1, x2)",
                           "n=2; else : abs(x1) + 0.5*x2", "n=2; else : max(x1 - x2, -x1)"}) {
    const PiecewiseFn f = fn(text);
    const Point x = Point::Zero(static_cast<Eigen::Index>(f.dim()));
    const std::vector<Point> hull = clarke_subdiff(f, x, plan).hull_vertices();
    for (const Point& v : unit_directions(f.dim(), 16)) {
      const double h = clarke_dirderiv(f, x, v, plan).value;
      for (const Point& d : hull) CHECK_MESSAGE(d.dot(v) <= h + 1e-3, text);
    }
  }
}

TEST_CASE("positive homogeneity and subadditivity on corpus kinks") {
  SamplePlan plan;
  const std::vector<std::pair<const char*, Point>> cases = {
      {"n=1; else : abs(x1)", pt(0)},           {"n=1; else : abs(x1 - 0.37)", pt(0.37)},
      {kStepJump, pt(-1)},                      {"n=1; else : max(x1, 2*x1)", pt(0)},
      {"n=2; else : abs(x1) + 0.5*x2", pt(0, 0)}, {"n=2; else : max(x1 - x2, -x1)", pt(0, 0)},
  };
  for (const auto& [text, x] : cases) {
    const PiecewiseFn f = fn(text);
    const std::vector<Point> dirs = unit_directions(f.dim(), 16);
    for (const Point& v : dirs) {
      const double h = clarke_dirderiv(f, x, v, plan).value;
      for (double s : {0.5, 2.0, 10.0}) {
        CHECK_MESSAGE(std::abs(clarke_dirderiv(f, x, s * v, plan).value - s * h) <= 1e-6, text);
      }
    }
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
      const Point& u = dirs[i];
      const Point& w = dirs[i + 1];
      if ((u + w).norm() < 1e-9) continue;
      const double lhs = clarke_dirderiv(f, x, u + w, plan).value;
      const double rhs = clarke_dirderiv(f, x, u, plan).value + clarke_dirderiv(f, x, w, plan).value;
      CHECK_MESSAGE(lhs <= rhs + 1e-4, text);
    }
  }
}

TEST_CASE("distance function") {
  CHECK(distance_fn(DomainSet::interval(0, 1), pt(2)) == 1);
  CHECK(distance_fn(DomainSet::halfspace(pt(3, 4), 5), pt(3, 4)) == doctest::Approx((25.0 - 5) / 5));
  CHECK(distance_fn(DomainSet::interval(0, 1), pt(0.5)) == 0);
  const DomainSet empty = DomainSet::intersection({DomainSet::box({0}, {INFINITY}), DomainSet::box({-INFINITY}, {-1})});
  CHECK_THROWS_AS(distance_fn(empty, pt(3)), EmptySetError);
}

TEST_CASE("tangent and normal cones") {
  const DomainSet half = DomainSet::box({0}, {INFINITY});
  const ConeRep t = tangent_cone(half, pt(0));
  CHECK(t.kind == ConeRep::Kind::kPolyhedral);
  CHECK(t.contains(pt(1)));
  CHECK_FALSE(t.contains(pt(-1)));
  const ConeRep n = normal_cone(half, pt(0));
  CHECK(n.contains(pt(-3)));
  CHECK_FALSE(n.contains(pt(1)));
  CHECK(tangent_cone(half, pt(2)).kind == ConeRep::Kind::kFull);
  CHECK(normal_cone(half, pt(2)).kind == ConeRep::Kind::kTrivial);

  const ConeRep sq = tangent_cone(DomainSet::box({0, 0}, {1, 1}), pt(0, 0));
  CHECK(same_generators(sq, cone_from_generators(2, {pt(1, 0), pt(0, 1)})));
  CHECK_THROWS_AS(normal_cone(half, pt(-1)), Error);
}

TEST_CASE("polar of polar") {
  const std::vector<ConeRep> cones = {
      cone_from_generators(2, {pt(1, 0), pt(1, 1)}),
      cone_from_generators(2, {pt(1, 0), pt(-1, 0), pt(0, 1)}),
      cone_from_generators(2, {pt(1, 2)}),
      cone_from_generators(1, {pt(-1)}),
      cone_from_generators(2, {pt(1, 0), pt(-1, 0), pt(0, 1), pt(0, -1)}),
      cone_from_generators(2, {}),
  };
  for (const ConeRep& c : cones) CHECK(same_generators(polar(polar(c)), c));
  CHECK(cones[4].kind == ConeRep::Kind::kFull);
  CHECK(cones[5].kind == ConeRep::Kind::kTrivial);
}

TEST_CASE("normal cone is unchanged by intersecting with a ball") {
  for (const ProblemSpec& s : load_corpus(APPROXMIN_CORPUS_DIR)) {
    for (const Point& x : s.candidates) {
      if (!s.X.contains(x)) continue;
      const ConeRep base = normal_cone(s.X, x);
      for (double delta : {0.1, 1.0, 10.0}) {
        CHECK_MESSAGE(same_generators(normal_cone(s.X & DomainSet::ball(x, delta), x), base), s.name);
      }
    }
  }
}
