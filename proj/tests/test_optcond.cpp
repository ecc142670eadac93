#include "approxmin/cone.hpp"
#include "approxmin/corpus.hpp"
#include "approxmin/error.hpp"
#include "approxmin/min_norm.hpp"
#include "approxmin/optcond.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace approxmin;
using namespace testing;

namespace {

VectorProblem vp(std::vector<std::string> objectives, DomainSet X, std::vector<std::string> constraints = {}) {
  std::vector<PiecewiseFn> f, g;
  for (const auto& t : objectives) f.push_back(fn(t));
  for (const auto& t : constraints) g.push_back(fn(t));
  return VectorProblem(std::move(f), std::move(g), std::move(X));
}

ConeRep trivial(std::size_t dim) { return cone_from_generators(dim, {}); }

}  // namespace

TEST_CASE("composite distance examples") {
  CHECK(composite_set_distance({{1, {pt(1)}}}, 2, trivial(1)).distance == doctest::Approx(0).epsilon(1e-12));
  CHECK(composite_set_distance({{1, {pt(3)}}}, 1, trivial(1)).distance == doctest::Approx(2).epsilon(1e-9));
  const ConeRep full = cone_from_generators(2, {pt(1, 0), pt(-1, 0), pt(0, 1), pt(0, -1)});
  CHECK(composite_set_distance({{1, {pt(5, 5), pt(7, 1)}}}, 0, full).distance == 0);
}

TEST_CASE("composite distance: segments, sums and cones") {
  // conv{(1,1),(1,-1)} is the segment x = 1.
  CHECK(composite_set_distance({{1, {pt(1, 1), pt(1, -1)}}}, 0, trivial(2)).distance == doctest::Approx(1));
  // Adding conv{(-2,0),(0,0)} reaches the origin.
  CHECK(composite_set_distance({{1, {pt(1, 1), pt(1, -1)}}, {1, {pt(-2, 0), pt(0, 0)}}}, 0, trivial(2)).distance <= 1e-8);
  // The ray -e1 absorbs the offset.
  CHECK(composite_set_distance({{2, {pt(1, 3)}}}, 0, cone_from_generators(2, {pt(-1, 0)})).distance ==
        doctest::Approx(6));
  CHECK(composite_set_distance({{2, {pt(1, 3)}}}, 1, cone_from_generators(2, {pt(-1, 0)})).distance ==
        doctest::Approx(5));
  CHECK(composite_set_distance({{0.5, {pt(4)}}}, 0, cone_from_generators(1, {pt(-1)})).distance <= 1e-8);
}

TEST_CASE("Fritz John residual examples") {
  SamplePlan plan;
  const VectorProblem lin = vp({"n=1; else : x1"}, DomainSet::full(1), {"n=1; else : -x1"});
  const FJCertificate a = check_fritz_john(lin, pt(0.5), {2}, {1}, {0}, plan);
  CHECK(a.residual <= 1e-9);
  REQUIRE(a.slackness.size() == 1);
  CHECK(a.slackness[0] == 0);

  const VectorProblem sq = vp({"n=1; else : x1^2"}, DomainSet::full(1));
  CHECK(check_fritz_john(sq, pt(0), {0.3}, {1}, {}, plan).residual <= 1e-6);
  CHECK(check_fritz_john(sq, pt(1), {0.5}, {1}, {}, plan).residual == doctest::Approx(1.5).epsilon(1e-5));

  CHECK_THROWS_AS(check_fritz_john(sq, pt(1), {0.5}, {0}, {}, plan), Error);
  CHECK_THROWS_AS(check_fritz_john(sq, pt(1), {0.5}, {-1}, {}, plan), Error);
  const FJCertificate scaled = check_fritz_john(lin, pt(0.5), {2}, {4}, {0}, plan);
  CHECK(scaled.lambda[0] == 1);
}

TEST_CASE("multiplier search examples") {
  SamplePlan plan;
  const MultiplierSearch a = find_multipliers(vp({"n=1; else : x1^2"}, DomainSet::full(1)), pt(0), {0.1}, plan);
  CHECK(a.success);
  CHECK(a.best.lambda[0] == 1);
  CHECK(a.best.residual <= 1e-9);
  const MultiplierSearch b = find_multipliers(vp({"n=1; else : abs(x1)"}, DomainSet::full(1)), pt(0), {0.1}, plan);
  CHECK(b.success);
  const MultiplierSearch c = find_multipliers(vp({"n=1; else : x1"}, DomainSet::full(1)), pt(0), {0.5}, plan);
  CHECK_FALSE(c.success);
  CHECK(c.best.residual == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("inactive constraints get zero multipliers") {
  SamplePlan plan;
  const VectorProblem p = vp({"n=1; else : x1"}, DomainSet::full(1), {"n=1; else : -x1"});
  const MultiplierSearch s = find_multipliers(p, pt(0.5), {0.5}, plan);
  CHECK_FALSE(s.success);
  CHECK(s.best.mu[0] == 0);
  const MultiplierSearch t = find_multipliers(p, pt(0), {0.1}, plan);
  CHECK(t.success);
  for (std::size_t j = 0; j < t.best.mu.size(); ++j) CHECK(std::abs(t.best.slackness[j]) <= 1e-8);
}

TEST_CASE("normal cone enters the residual") {
  SamplePlan plan;
  const VectorProblem p = vp({"n=1; else : x1"}, DomainSet::box({0}, {INFINITY}));
  CHECK(check_fritz_john(p, pt(0), {0.1}, {1}, {}, plan).residual <= 1e-8);
  CHECK(check_fritz_john(p, pt(1), {0.1}, {1}, {}, plan).residual == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("residual is non-increasing in alpha") {
  SamplePlan plan;
  const ProblemSpec s = find_fixture(APPROXMIN_CORPUS_DIR, "lipschitz-vp");
  const VectorProblem v = s.vector_problem();
  for (const Point& x0 : s.candidates) {
    double prev = INFINITY;
    for (double a : {0.05, 0.2, 0.5, 1.0, 2.0}) {
      const double r = check_fritz_john(v, x0, {a, a}, {0.5, 0.5}, {0}, plan).residual;
      CHECK(r <= prev + 1e-9);
      prev = r;
    }
  }
}

TEST_CASE("successful searches satisfy slackness on the Lipschitz fixtures") {
  SamplePlan plan;
  for (const char* name : {"lipschitz-vp", "lipschitz-halfline", "linear-vp"}) {
    const ProblemSpec s = find_fixture(APPROXMIN_CORPUS_DIR, name);
    const VectorProblem v = s.vector_problem();
    for (const Point& x0 : s.candidates) {
      const AlphaChoice a = alpha_from_lipschitz(v, x0, 0.5, plan);
      const MultiplierSearch m = find_multipliers(v, x0, a.alpha, plan);
      CHECK_MESSAGE(m.success, name);
      for (double sl : m.best.slackness) CHECK(std::abs(sl) <= 1e-8);
    }
  }
}
