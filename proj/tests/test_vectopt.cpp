#include "approxmin/corpus.hpp"
#include "approxmin/error.hpp"
#include "approxmin/minima.hpp"
#include "approxmin/vectopt.hpp"

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

}  // namespace

TEST_CASE("efficiency examples") {
  SamplePlan plan;
  const VectorProblem a = vp({"n=1; else : x1", "n=1; else : -x1"}, DomainSet::interval(-1, 1));
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(check_efficient(a, pt(x), kGlobal, plan).holds());
  const VectorProblem b = vp({"n=1; else : x1^2", "n=1; else : x1^2"}, DomainSet::interval(-1, 1));
  const Verdict v = check_efficient(b, pt(0.5), kGlobal, plan);
  REQUIRE(v.fails());
  CHECK(v.witness->point[0] == 0);
  CHECK(check_efficient(b, pt(0.5), 0.1, plan).fails());
}

TEST_CASE("quasi efficiency examples") {
  SamplePlan plan;
  SamplePlan unit = plan;
  unit.window = Window{pt(0), pt(1)};
  const VectorProblem a = vp({"n=1; else : -2*x1"}, DomainSet::box({0}, {INFINITY}));
  const Verdict v = check_quasi_efficient(a, pt(0), {1}, kGlobal, unit);
  REQUIRE(v.fails());
  CHECK(v.witness->point[0] == 1);
  CHECK_THROWS_AS(check_quasi_efficient(a, pt(0), {0}, kGlobal, plan), Error);
  CHECK_THROWS_AS(check_quasi_efficient(a, pt(0), {1, 1}, kGlobal, plan), Error);
}

TEST_CASE("constraints restrict the feasible set") {
  SamplePlan plan;
  const VectorProblem a = vp({"n=1; else : x1"}, DomainSet::full(1), {"n=1; else : -x1"});
  CHECK(a.feasible(pt(0)));
  CHECK_FALSE(a.feasible(pt(-0.1)));
  CHECK(check_efficient(a, pt(0), kGlobal, plan).holds());
  CHECK(check_efficient(a, pt(0.5), kGlobal, plan).fails());
  CHECK_THROWS_AS(check_efficient(a, pt(-1), kGlobal, plan), Error);
  CHECK_THROWS_AS(vp({"n=1; else : x1"}, DomainSet::full(2)), Error);
}

TEST_CASE("scalar collapse on the corpus") {
  SamplePlan plan;
  for (const ProblemSpec& s : load_corpus(APPROXMIN_CORPUS_DIR)) {
    if (!s.scalar()) continue;
    const SamplePlan p = plan_for(s, plan);
    const VectorProblem v = s.vector_problem();
    for (const Point& x0 : s.candidates) {
      const Verdict u = check_usual_minimum(s.objectives[0], s.X, x0, p);
      const Verdict e = check_efficient(v, x0, kGlobal, p);
      CHECK_MESSAGE(u.status == e.status, s.name);
      if (u.witness && e.witness) CHECK(same_point(u.witness->point, e.witness->point));
      for (double alpha : {0.5, 1.0, 3.0}) {
        const Verdict q = check_quasi_minimum_alpha(s.objectives[0], s.X, x0, alpha, p);
        const Verdict qe = check_quasi_efficient(v, x0, {alpha}, kGlobal, p);
        CHECK_MESSAGE(q.status == qe.status, s.name);
        if (q.witness && qe.witness) CHECK(same_point(q.witness->point, qe.witness->point));
      }
    }
  }
}

TEST_CASE("alpha from Lipschitz constants") {
  SamplePlan plan;
  const VectorProblem a = vp({"n=1; else : abs(x1)"}, DomainSet::full(1));
  const AlphaChoice c = alpha_from_lipschitz(a, pt(0), 0.5, plan);
  CHECK(c.alpha[0] == doctest::Approx(1.11).epsilon(1e-9));
  CHECK(c.delta == 0.5);
  CHECK(check_quasi_efficient(a, pt(0), c.alpha, c.delta, plan).holds());
  const VectorProblem b = vp({"n=1; else : 2", "n=1; else : -1"}, DomainSet::full(1));
  const AlphaChoice d = alpha_from_lipschitz(b, pt(3), 0.5, plan);
  CHECK(d.alpha[0] == doctest::Approx(0.01));
  CHECK(d.alpha[1] == doctest::Approx(0.01));
  const VectorProblem inf = vp({"n=1; x1 >= 0 : x1 ; else : inf"}, DomainSet::full(1));
  CHECK_THROWS_AS(alpha_from_lipschitz(inf, pt(0), 0.5, plan), NotLipschitzError);
}

TEST_CASE("every grid point of a Lipschitz problem on the halfline is quasi efficient") {
  SamplePlan plan;
  const ProblemSpec s = find_fixture(APPROXMIN_CORPUS_DIR, "lipschitz-halfline");
  const VectorProblem v = s.vector_problem();
  for (const Point& x0 : grid_samples(s.X, 21, sampling_window(s.X, plan))) {
    const AlphaChoice c = alpha_from_lipschitz(v, x0, 0.5, plan);
    CHECK(check_quasi_efficient(v, x0, c.alpha, c.delta, plan).holds());
  }
}

TEST_CASE("monotone in alpha; efficiency implies quasi efficiency") {
  SamplePlan plan;
  for (const ProblemSpec& s : load_corpus(APPROXMIN_CORPUS_DIR)) {
    const SamplePlan p = plan_for(s, plan);
    const VectorProblem v = s.vector_problem();
    for (const Point& x0 : s.candidates) {
      if (!v.feasible(x0)) continue;
      const bool efficient = check_efficient(v, x0, kGlobal, p).holds();
      bool prev = false;
      for (double a : {0.1, 0.5, 1.0, 2.0}) {
        const bool q = check_quasi_efficient(v, x0, std::vector<double>(v.objectives.size(), a), kGlobal, p).holds();
        CHECK_MESSAGE(!(prev && !q), s.name);
        if (efficient) CHECK_MESSAGE(q, s.name);
        prev = q;
      }
    }
  }
}
