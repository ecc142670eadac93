#pragma once

#include "approxmin/cone.hpp"
#include "approxmin/types.hpp"

#include <vector>

namespace approxmin {

/// A weighted polytope w * conv(vertices).
struct WeightedPolytope {
  double weight = 1.0;
  std::vector<Point> vertices;
};

struct MinNormResult {
  /// max(0, dist(0, sum_i w_i conv(P_i) + K) - radius).
  double distance = 0.0;
  /// Nearest point of sum_i w_i conv(P_i) + K to the origin.
  Point point;
  bool converged = true;
  int iterations = 0;
};

/// Distance from the origin to sum_i w_i conv(P_i) + radius * B + K.
///
/// Wolfe's minimum-norm-point method over the Minkowski sum, with the linear
/// minimization oracle taken summand by summand. The cone enters as
/// conv({0} ∪ M g_j) for its unit generators g_j; M starts at twice the
/// polytope bound plus two and grows fourfold while the solution uses the
/// whole cone budget. A full cone gives 0.
MinNormResult composite_set_distance(const std::vector<WeightedPolytope>& polytopes, double radius,
                                     const ConeRep& cone, double tol = 1e-8);

}  // namespace approxmin
