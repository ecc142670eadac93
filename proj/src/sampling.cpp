#include "approxmin/sampling.hpp"

#include "approxmin/error.hpp"

#include <numbers>

namespace approxmin {

void SamplePlan::validate() const {
  if (samples < 1) throw Error("plan: samples must be >= 1");
  if (!(radius0 > 0)) throw Error("plan: initial radius must be positive");
  if (!(ratio > 0 && ratio < 1)) throw Error("plan: radius ratio must lie in (0, 1)");
  if (stages < 2) throw Error("plan: at least two stages are required");
  if (steps < 1) throw Error("plan: steps must be >= 1");
  if (grid_res < 2) throw Error("plan: grid resolution must be >= 2");
  if (expand_levels < 1) throw Error("plan: expand_levels must be >= 1");
  if (threads < 1) throw Error("plan: threads must be >= 1");
}

namespace {

std::uint64_t mix(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double standard_normal(std::uint64_t seed, std::uint64_t stage, std::uint64_t index,
                       std::uint64_t lane) {
  const double u1 = 1.0 - counter_uniform(seed, stage, index, 2 * lane);  // (0, 1]
  const double u2 = counter_uniform(seed, stage, index, 2 * lane + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stage, std::uint64_t index,
                       std::uint64_t lane) {
  const std::uint64_t key = mix(seed ^ mix(stage ^ mix(index ^ mix(lane))));
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

std::vector<Point> ball_samples(const Point& center, double radius, int count,
                                const SamplePlan& plan, std::uint64_t stage) {
  if (!(radius > 0)) throw Error("ball_samples: radius must be positive");
  if (count < 1) throw Error("ball_samples: count must be >= 1");
  const Eigen::Index n = center.size();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < n && static_cast<int>(out.size()) < count; ++i) {
    for (double sign : {1.0, -1.0}) {
      if (static_cast<int>(out.size()) == count) break;
      Point p = center;
      p[i] += sign * radius / 2;
      out.push_back(std::move(p));
    }
  }
  // Shrink slightly so rounding never lands a point on the sphere.
  const double inner = radius * (1.0 - 1e-9);
  for (std::uint64_t idx = 0; static_cast<int>(out.size()) < count; ++idx) {
    Point dir(n);
    for (Eigen::Index k = 0; k < n; ++k)
      dir[k] = standard_normal(plan.seed, stage, idx, static_cast<std::uint64_t>(k));
    const double len = dir.norm();
    if (len == 0.0) continue;
    const double u = counter_uniform(plan.seed, stage, idx, 1000003);
    const double r = inner * std::pow(u, 1.0 / static_cast<double>(n));
    out.push_back(center + (r / len) * dir);
  }
  return out;
}

std::vector<Point> grid_samples(const DomainSet& X, int resolution, const Window& bounds) {
  if (resolution < 2) throw Error("grid_samples: resolution must be >= 2");
  const Eigen::Index n = bounds.lower.size();
  if (static_cast<std::size_t>(n) != X.dim()) throw DimensionError(X.dim(), static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(bounds.lower[i]) || !std::isfinite(bounds.upper[i]))
      throw Error("grid_samples: bounds must be finite");
  }
  std::vector<Point> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const double denom = resolution - 1;
  for (;;) {
    Point p(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int k = idx[static_cast<std::size_t>(i)];
      const double lo = bounds.lower[i], hi = bounds.upper[i];
      p[i] = k == resolution - 1 ? hi : lo + (hi - lo) * k / denom;
    }
    if (X.contains(p)) out.push_back(std::move(p));
    // odometer, last axis fastest so points come out in lexicographic order
    Eigen::Index axis = n - 1;
    while (axis >= 0) {
      auto& k = idx[static_cast<std::size_t>(axis)];
      if (++k < resolution) break;
      k = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

int expand_resolution(std::size_t dim) {
  if (dim <= 1) return 41;
  if (dim == 2) return 21;
  return 11;
}

std::vector<Point> expanding_samples(const DomainSet& X, int level, const SamplePlan&) {
  const auto n = static_cast<Eigen::Index>(X.dim());
  const double half = std::ldexp(1.0, level);
  Window w{Point::Constant(n, -half), Point::Constant(n, half)};
  return grid_samples(X, expand_resolution(X.dim()), w);
}

Window sampling_window(const DomainSet& X, const SamplePlan& plan) {
  if (plan.window) {
    if (static_cast<std::size_t>(plan.window->lower.size()) != X.dim())
      throw DimensionError(X.dim(), static_cast<std::size_t>(plan.window->lower.size()));
    return *plan.window;
  }
  return default_window(X);
}

}  // namespace approxmin
