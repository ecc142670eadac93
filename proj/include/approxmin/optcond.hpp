#pragma once

#include "approxmin/cone.hpp"
#include "approxmin/min_norm.hpp"
#include "approxmin/nonsmooth.hpp"
#include "approxmin/vectopt.hpp"

#include <vector>

namespace approxmin {

struct FJCertificate {
  std::vector<double> lambda;
  std::vector<double> mu;
  std::vector<double> alpha;
  /// dist(0, sum lambda_i df_i + sum mu_j dg_j + (sum lambda_i alpha_i) B + N_X(x0)).
  double residual = 0.0;
  bool converged = true;
  /// mu_j g_j(x0) per constraint.
  std::vector<double> slackness;
  std::vector<SubdiffApprox> objective_subdiffs;
  std::vector<SubdiffApprox> constraint_subdiffs;
  ConeRep normal_cone;
};

/// Residual of the multiplier rule at x0 for the given (lambda, mu), after
/// scaling them to unit l1 norm. Throws on negative or all-zero multipliers.
FJCertificate check_fritz_john(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha,
                               const std::vector<double>& lambda, const std::vector<double>& mu,
                               const SamplePlan& plan);

struct MultiplierSearch {
  bool success = false;
  double threshold = 1e-4;
  /// Best candidate found, successful or not.
  FJCertificate best;
  std::size_t candidates = 0;
};

/// Minimizes the residual over the l1 simplex of (lambda, mu) with mu_j = 0
/// whenever g_j(x0) < -1e-8: a composition grid of step 1/8, then pairwise
/// transfers with halving steps. Success means residual <= threshold.
MultiplierSearch find_multipliers(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha,
                                  const SamplePlan& plan, double threshold = 1e-4);

}  // namespace approxmin
