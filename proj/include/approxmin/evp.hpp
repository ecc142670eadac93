#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/function.hpp"
#include "approxmin/sampling.hpp"
#include "approxmin/verdict.hpp"

#include <string>
#include <vector>

namespace approxmin {

struct EvpCertificate {
  double eps = 0.0;
  double lambda = 1.0;
  Point x0;
  Point x_lambda;
  ExtReal f_x0;
  ExtReal f_x_lambda;
  /// (i) f(x_lambda) - f(x0), must be <= 0.
  double residual_i = 0.0;
  /// (ii) |x_lambda - x0|, must be <= lambda.
  double distance_ii = 0.0;
  /// (iii) max over the grid of f(x_lambda) - f(x) - (eps/lambda)|x - x_lambda|, clamped at 0.
  double violation_iii = 0.0;
  int grid_resolution = 0;
  std::size_t grid_points = 0;
  std::vector<Point> trace;
  std::vector<ExtReal> trace_values;
  bool trivial = false;
  std::string note;

  bool valid(double tol = 1e-9) const;
};

/// Premise of the variational principle on samples: f(x0) <= inf f + eps,
/// f bounded below, f lsc at a few grid points. Vacuous (with a note) when f
/// is +inf on every sample.
Verdict verify_evp_premise(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                           const SamplePlan& plan);

/// Descent on the grid: x_{k+1} minimizes f(x) + (eps/lambda)|x - x_k| over
/// the sampled improvement set {f(x) <= f(x_k) - (eps/lambda)|x - x_k|},
/// ties to the lexicographically smallest point. When the grid offers no
/// improvement the same rule continues on dyadic pattern steps around the
/// current point, so the endpoint does not depend on the grid spacing.
/// Throws Error if the premise fails and NonConvergenceError past
/// 10 x grid-size moves.
EvpCertificate ekeland_search(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                              double lambda, const SamplePlan& plan);

/// Check (iii) for x_lambda over a grid of the given resolution on the
/// plan's window.
double evp_violation(const PiecewiseFn& f, const DomainSet& X, const Point& x_lambda, double slope,
                     int resolution, const SamplePlan& plan);

}  // namespace approxmin
