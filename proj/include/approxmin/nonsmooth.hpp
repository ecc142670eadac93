#pragma once

#include "approxmin/cone.hpp"
#include "approxmin/domain.hpp"
#include "approxmin/function.hpp"
#include "approxmin/sampling.hpp"
#include "approxmin/verdict.hpp"

#include <optional>
#include <vector>

namespace approxmin {

/// Drop sizes probed by the lsc and continuity checks.
inline constexpr double kLscEpsGrid[] = {0.5, 0.1, 0.01};

/// Lower semicontinuity at x0: fails when, for some eps0 in kLscEpsGrid,
/// every stage of the shrinking-ball schedule contains a sample with
/// f(x) < f(x0) - eps0. The witness comes from the last stage. Samples are
/// restricted to X when given.
Verdict check_lsc(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                  const std::optional<DomainSet>& X = std::nullopt);

/// Same persistence test with |f(x) - f(x0)| > eps0.
Verdict check_continuity(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                         const std::optional<DomainSet>& X = std::nullopt);

/// Largest pairwise quotient |f(y) - f(z)| / |y - z| over x and the ball
/// samples of B(x, radius). Lower estimate of the local constant. Throws
/// NotLipschitzError on an infinite value.
double local_lipschitz(const PiecewiseFn& f, const Point& x, double radius, const SamplePlan& plan);

struct DirDeriv {
  double value = 0.0;
  bool converged = false;
  /// Quotient magnitudes grew across stages: f is likely not Lipschitz at x.
  bool diverging = false;
  /// Tail maxima max_{j >= k} s_j of the per-stage quotient maxima s_j;
  /// non-increasing, the last entry is `value`.
  std::vector<double> stage_values;
};

/// Clarke generalized directional derivative as a discretized limsup. Stage k
/// takes base points {x} plus ball samples of radius radius(k) and steps
/// step(j), j > k. Quotients are formed along v/|v| and scaled by |v|.
DirDeriv clarke_dirderiv(const PiecewiseFn& f, const Point& x, const Point& v,
                         const SamplePlan& plan);

struct SubdiffApprox {
  Point base;
  std::vector<Point> gradients;
  double radius = 0.0;
  std::vector<double> steps;

  /// Extreme points of conv(gradients): endpoints in 1-D, the convex hull
  /// polygon in 2-D, all distinct estimates in higher dimensions.
  std::vector<Point> hull_vertices() const;
};

/// Gradient sampling: central differences at ball samples of the final
/// stage, skipping samples whose forward and backward quotients disagree by
/// more than 1e-6 in some coordinate.
SubdiffApprox clarke_subdiff(const PiecewiseFn& f, const Point& x, const SamplePlan& plan);

/// Euclidean distance to X. Throws EmptySetError when an intersection
/// projection does not settle on a common point.
double distance_fn(const DomainSet& X, const Point& y);

}  // namespace approxmin
