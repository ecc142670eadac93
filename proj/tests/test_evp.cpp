#include "approxmin/error.hpp"
#include "approxmin/evp.hpp"
#include "approxmin/minima.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace approxmin;
using namespace testing;

namespace {

const DomainSet kBox = DomainSet::interval(-2, 2);

struct Case {
  const char* text;
  double x0, eps, lambda;
};

const Case kCases[] = {
    {"n=1; else : x1^2", 0.5, 0.25, 1},
    {"n=1; else : abs(x1)", 0.3, 0.3, 0.5},
    {"n=1; x1 <= 0 : x1 ; else : 1", -1.5, 0.5, 1},
    {"n=1; else : min((x1 + 1)^2, (x1 - 1)^2 + 0.5)", 0.9, 0.6, 2},
    {"n=1; else : abs(x1 - 0.37)", 1, 0.7, 1},
    {"n=1; else : abs(x1 - 0.37)", 1, 0.7, 0.25},
    {"n=1; else : x1^2", 0.5, 0.25, 0.1},
};

}  // namespace

TEST_CASE("premise") {
  SamplePlan plan;
  CHECK(verify_evp_premise(fn("n=1; else : x1^2"), kBox, pt(0.5), 0.25, plan).holds());
  CHECK(verify_evp_premise(fn("n=1; else : abs(x1)"), kBox, pt(0), 0.01, plan).holds());
  CHECK(verify_evp_premise(fn("n=1; else : x1"), kBox, pt(2), 1, plan).fails());
  CHECK(verify_evp_premise(fn("n=1; else : inf"), kBox, pt(0), 1, plan).status == Status::kVacuous);
  CHECK(verify_evp_premise(fn("n=1; else : x1"), line(), pt(0), 1, plan).fails());
}

TEST_CASE("parabola certificate") {
  SamplePlan plan;
  const EvpCertificate c = ekeland_search(fn("n=1; else : x1^2"), kBox, pt(0.5), 0.25, 1, plan);
  CHECK(c.valid());
  CHECK(c.residual_i <= 0);
  CHECK(c.distance_ii <= 1);
  CHECK(c.violation_iii == 0);
  CHECK(c.grid_resolution == plan.grid_res);
}

TEST_CASE("minimum start stays put") {
  SamplePlan plan;
  for (double lambda : {0.1, 1.0, 5.0}) {
    const EvpCertificate c = ekeland_search(fn("n=1; else : abs(x1)"), kBox, pt(0), 0.5, lambda, plan);
    CHECK(c.valid());
    CHECK(same_point(c.x_lambda, pt(0)));
  }
}

TEST_CASE("trivial cases and errors") {
  SamplePlan plan;
  const EvpCertificate a = ekeland_search(fn("n=1; else : x1"), kBox, pt(1), 0, 1, plan);
  CHECK(a.trivial);
  CHECK(same_point(a.x_lambda, pt(1)));
  const EvpCertificate b = ekeland_search(fn("n=1; else : inf"), kBox, pt(1), 1, 1, plan);
  CHECK(b.trivial);
  CHECK_THROWS_AS(ekeland_search(fn("n=1; else : x1"), kBox, pt(2), 1, 1, plan), Error);
}

TEST_CASE("certificates re-verify on a finer grid, with a descending trace") {
  SamplePlan plan;
  for (const Case& k : kCases) {
    const PiecewiseFn f = fn(k.text);
    const EvpCertificate c = ekeland_search(f, kBox, pt(k.x0), k.eps, k.lambda, plan);
    CHECK_MESSAGE(c.valid(), k.text);
    CHECK(c.distance_ii <= k.lambda + 1e-12);
    const double slope = k.eps / k.lambda;
    CHECK_MESSAGE(evp_violation(f, kBox, c.x_lambda, slope, 2 * (plan.grid_res - 1) + 1, plan) <= 1e-9, k.text);
    REQUIRE(c.trace.size() == c.trace_values.size());
    for (std::size_t i = 1; i < c.trace.size(); ++i) {
      const double drop = c.trace_values[i - 1].value() - c.trace_values[i].value();
      const double step = (c.trace[i] - c.trace[i - 1]).norm();
      CHECK(step > 0);
      CHECK_MESSAGE(drop >= slope * step - 1e-12, k.text);
    }
    CHECK(check_quasi_minimum_alpha(f, kBox, c.x_lambda, slope, plan).holds());
  }
}

TEST_CASE("2-d certificate") {
  SamplePlan plan;
  plan.grid_res = 41;
  const DomainSet X = DomainSet::box({-1, -1}, {1, 1});
  const PiecewiseFn f = fn("n=2; else : abs(x1 - 0.3) + (x2 + 0.2)^2");
  const EvpCertificate c = ekeland_search(f, X, pt(0.9, 0.8), 1.7, 1, plan);
  CHECK(c.valid());
  CHECK(evp_violation(f, X, c.x_lambda, 1.7, 81, plan) <= 1e-9);
}
