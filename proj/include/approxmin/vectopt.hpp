#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/function.hpp"
#include "approxmin/sampling.hpp"
#include "approxmin/verdict.hpp"

#include <limits>
#include <vector>

namespace approxmin {

/// min (f_1, ..., f_p) over Omega = {x in X : g_j(x) <= 0 for all j}.
struct VectorProblem {
  std::vector<PiecewiseFn> objectives;
  std::vector<PiecewiseFn> constraints;
  DomainSet X;

  VectorProblem(std::vector<PiecewiseFn> objectives, std::vector<PiecewiseFn> constraints, DomainSet X);

  std::size_t dim() const { return X.dim(); }
  bool feasible(const Point& x) const;
  double margin() const;
};

inline constexpr double kGlobal = std::numeric_limits<double>::infinity();

/// Fails iff a sampled x in Omega ∩ B(x0, delta) has f_i(x) <= f_i(x0) for
/// every i and f_r(x0) > f_r(x) + margin for some r. delta = kGlobal checks
/// all of Omega on the same sample set as the scalar checks.
Verdict check_efficient(const VectorProblem& vp, const Point& x0, double delta, const SamplePlan& plan);

/// As check_efficient with f_i(x) + alpha_i |x - x0| in place of f_i(x).
Verdict check_quasi_efficient(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha,
                              double delta, const SamplePlan& plan);

struct AlphaChoice {
  std::vector<double> alpha;
  std::vector<double> lipschitz;
  double delta = 0.0;
};

/// alpha_i = 1.1 L_i + 0.01 with L_i = local_lipschitz(f_i, x0, radius), and
/// delta = radius.
AlphaChoice alpha_from_lipschitz(const VectorProblem& vp, const Point& x0, double radius, const SamplePlan& plan);

}  // namespace approxmin
