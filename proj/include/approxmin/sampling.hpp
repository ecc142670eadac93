#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/types.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace approxmin {

/// Deterministic sampling parameters shared by every checker.
///
/// Radii follow radius(k) = radius0 * ratio^k for k = 0..stages-1 and
/// difference-quotient steps follow step(k) = 2^-k for k = 1..steps. Random
/// points come from a counter-based generator keyed by (seed, stage, index),
/// so the sample set never depends on evaluation order or thread count.
struct SamplePlan {
  std::uint64_t seed = 1;
  int samples = 64;
  double radius0 = 1.0;
  double ratio = 0.5;
  int stages = 20;
  int steps = 20;
  int grid_res = 201;
  /// Expanding boxes of half-width 2^j, j = 0..expand_levels-1, used for
  /// global claims on unbounded sets.
  int expand_levels = 11;
  std::optional<Window> window;
  /// Worker count for fan-out; never changes results.
  int threads = 1;

  double radius(int k) const { return radius0 * std::pow(ratio, k); }
  double step(int k) const { return std::ldexp(1.0, -k); }

  void validate() const;
};

/// Uniform double in [0, 1) for the counter (seed, stage, index, lane).
double counter_uniform(std::uint64_t seed, std::uint64_t stage, std::uint64_t index,
                       std::uint64_t lane);

/// `count` points strictly inside the open ball. The axis points
/// center +- radius/2 * e_i come first, the rest are uniform in the ball.
std::vector<Point> ball_samples(const Point& center, double radius, int count,
                                const SamplePlan& plan, std::uint64_t stage = 0);

/// Regular lattice over `bounds` with `resolution` points per axis, keeping
/// only members of X. An empty result means any universal claim over it is
/// vacuous.
std::vector<Point> grid_samples(const DomainSet& X, int resolution, const Window& bounds);

/// Lattice points of the expanding box of half-width 2^level, filtered by X.
std::vector<Point> expanding_samples(const DomainSet& X, int level, const SamplePlan& plan);

/// Points per axis used on expanding boxes: 41 in 1-D, 21 in 2-D, 11 above.
int expand_resolution(std::size_t dim);

Window sampling_window(const DomainSet& X, const SamplePlan& plan);

}  // namespace approxmin
