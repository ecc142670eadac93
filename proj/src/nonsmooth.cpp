#include "approxmin/nonsmooth.hpp"

#include "approxmin/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace approxmin {

namespace {

std::vector<Point> stage_points(const Point& x0, const SamplePlan& plan, int k,
                                const std::optional<DomainSet>& X) {
  std::vector<Point> pts = ball_samples(x0, plan.radius(k), plan.samples, plan, static_cast<std::uint64_t>(k));
  if (X) std::erase_if(pts, [&](const Point& p) { return !X->contains(p); });
  return pts;
}

// Shared persistence scan for lsc and continuity. `excess` returns how far a
// sample value exceeds the allowed deviation (> 0 is a violation).
template <class Excess>
Verdict persistence_check(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                          const std::optional<DomainSet>& X, Excess excess) {
  plan.validate();
  const ExtReal fx0 = f(x0);
  Verdict v;
  v.status = Status::kHoldsOnSample;
  for (double eps0 : kLscEpsGrid) {
    v.violations = 0;
    bool every_stage = true;
    bool any_samples = false;
    std::optional<Point> worst;
    double worst_excess = 0.0;
    ExtReal worst_value;
    for (int k = 0; k < plan.stages; ++k) {
      const std::vector<Point> pts = stage_points(x0, plan, k, X);
      v.samples += pts.size();
      if (pts.empty()) continue;
      any_samples = true;
      bool hit = false;
      worst.reset();
      for (const Point& p : pts) {
        const ExtReal fp = f(p);
        const double e = excess(fx0, fp, eps0);
        if (e > 0) {
          hit = true;
          ++v.violations;
          if (!worst || e > worst_excess || (e == worst_excess && lex_less(p, *worst))) {
            worst = p;
            worst_excess = e;
            worst_value = fp;
          }
        }
      }
      if (!hit) {
        every_stage = false;
        break;
      }
    }
    if (!any_samples) {
      v.status = Status::kVacuous;
      v.note = "no samples in X near x0";
      return v;
    }
    if (every_stage) {
      v.status = Status::kFails;
      v.tolerance = eps0;
      v.witness = Witness{*worst, {{"f(x0)", fx0}, {"f(x)", worst_value}, {"eps0", eps0}}};
      v.details.emplace_back("eps0", eps0);
      v.details.emplace_back("last_radius", plan.radius(plan.stages - 1));
      if (fx0.is_infinite()) v.note = "f(x0) = +inf";
      return v;
    }
  }
  v.violations = 0;
  if (fx0.is_infinite()) v.note = "f(x0) = +inf; every nearby sample is +inf";
  return v;
}

}  // namespace

Verdict check_lsc(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                  const std::optional<DomainSet>& X) {
  return persistence_check(f, x0, plan, X, [](ExtReal fx0, ExtReal fx, double eps0) {
    if (fx0.is_infinite()) return fx.is_finite() ? 1.0 : 0.0;
    if (fx.is_infinite()) return 0.0;
    return (fx0.value() - eps0) - fx.value();
  });
}

Verdict check_continuity(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                         const std::optional<DomainSet>& X) {
  return persistence_check(f, x0, plan, X, [](ExtReal fx0, ExtReal fx, double eps0) {
    if (fx0.is_infinite() || fx.is_infinite()) return fx0 == fx ? 0.0 : 1.0;
    return std::abs(fx.value() - fx0.value()) - eps0;
  });
}

double local_lipschitz(const PiecewiseFn& f, const Point& x, double radius, const SamplePlan& plan) {
  std::vector<Point> pts{x};
  const std::vector<Point> ball = ball_samples(x, radius, plan.samples, plan);
  pts.insert(pts.end(), ball.begin(), ball.end());
  std::vector<double> vals;
  vals.reserve(pts.size());
  for (const Point& p : pts) {
    const ExtReal v = f(p);
    if (v.is_infinite()) throw NotLipschitzError("not locally Lipschitz on sampled ball: f = +inf at a sample");
    vals.push_back(v.value());
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = (pts[i] - pts[j]).norm();
      if (d > 0) best = std::max(best, std::abs(vals[i] - vals[j]) / d);
    }
  }
  return best;
}

DirDeriv clarke_dirderiv(const PiecewiseFn& f, const Point& x, const Point& v, const SamplePlan& plan) {
  plan.validate();
  if (v.size() != x.size()) throw DimensionError(static_cast<std::size_t>(x.size()), static_cast<std::size_t>(v.size()));
  const double scale = v.norm();
  DirDeriv out;
  if (scale == 0.0) {
    out.converged = true;
    out.stage_values.assign(static_cast<std::size_t>(plan.stages), 0.0);
    return out;
  }
  const Point u = v / scale;
  const int K = plan.stages;
  std::vector<double> stage_max(static_cast<std::size_t>(K));
  std::vector<double> stage_abs(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    std::vector<Point> base{x};
    const std::vector<Point> ball = ball_samples(x, plan.radius(k), plan.samples, plan, static_cast<std::uint64_t>(k));
    base.insert(base.end(), ball.begin(), ball.end());
    double best = -std::numeric_limits<double>::infinity();
    double mag = 0.0;
    for (const Point& z : base) {
      const ExtReal fz = f(z);
      if (fz.is_infinite()) throw NotLipschitzError("f = +inf near x; directional derivative undefined");
      for (int j = std::min(k + 1, plan.steps); j <= plan.steps; ++j) {
        const double lambda = plan.step(j);
        const ExtReal fzl = f(Point(z + lambda * u));
        if (fzl.is_infinite()) throw NotLipschitzError("f = +inf near x; directional derivative undefined");
        const double q = (fzl.value() - fz.value()) / lambda;
        best = std::max(best, q);
        if (j == std::min(k + 1, plan.steps)) mag = std::max(mag, std::abs(q));
      }
    }
    stage_max[static_cast<std::size_t>(k)] = best;
    stage_abs[static_cast<std::size_t>(k)] = mag;
  }
  out.stage_values.resize(static_cast<std::size_t>(K));
  double tail = -std::numeric_limits<double>::infinity();
  for (int k = K - 1; k >= 0; --k) {
    tail = std::max(tail, stage_max[static_cast<std::size_t>(k)]);
    out.stage_values[static_cast<std::size_t>(k)] = tail * scale;
  }
  out.value = out.stage_values.back();
  out.converged = std::abs(out.stage_values[static_cast<std::size_t>(K - 1)] -
                           out.stage_values[static_cast<std::size_t>(K - 2)]) <= 1e-4;
  const double mid = stage_abs[static_cast<std::size_t>((K - 1) / 2)];
  out.diverging = stage_abs.back() > 8.0 * std::max(1.0, mid);
  return out;
}

namespace {

struct GradientScan {
  std::vector<Point> gradients;
  std::vector<double> steps;
  double max_norm = 0.0;
};

GradientScan scan_gradients(const PiecewiseFn& f, const Point& x, const SamplePlan& plan, int k) {
  GradientScan out;
  const Eigen::Index n = x.size();
  for (const Point& z : ball_samples(x, plan.radius(k), plan.samples, plan, static_cast<std::uint64_t>(k))) {
    const ExtReal fz = f(z);
    if (fz.is_infinite()) throw NotLipschitzError("f = +inf near x; subdifferential undefined");
    // Step well inside the stage ball, but above the roundoff floor of f.
    const double h = std::max({1e-6 * plan.radius(k), 1e-10 * (std::abs(fz.value()) + z.norm()), 1e-300});
    Point g(n);
    bool smooth = true;
    for (Eigen::Index i = 0; i < n && smooth; ++i) {
      Point zp = z, zm = z;
      zp[i] += h;
      zm[i] -= h;
      const ExtReal fp = f(zp), fm = f(zm);
      if (fp.is_infinite() || fm.is_infinite())
        throw NotLipschitzError("f = +inf near x; subdifferential undefined");
      const double fwd = (fp.value() - fz.value()) / h;
      const double bwd = (fz.value() - fm.value()) / h;
      if (std::abs(fwd - bwd) > 1e-4 * (1.0 + std::abs(fwd) + std::abs(bwd))) smooth = false;
      g[i] = (fp.value() - fm.value()) / (2 * h);
    }
    if (!smooth) continue;
    out.max_norm = std::max(out.max_norm, g.norm());
    out.gradients.push_back(std::move(g));
    out.steps.push_back(h);
  }
  return out;
}

}  // namespace

SubdiffApprox clarke_subdiff(const PiecewiseFn& f, const Point& x, const SamplePlan& plan) {
  plan.validate();
  if (static_cast<std::size_t>(x.size()) != f.dim()) throw DimensionError(f.dim(), static_cast<std::size_t>(x.size()));
  const int K = plan.stages;
  SubdiffApprox out;
  out.base = x;
  int used = -1;
  GradientScan last;
  for (int k = K - 1; k >= 0; --k) {
    last = scan_gradients(f, x, plan, k);
    if (!last.gradients.empty()) {
      used = k;
      break;
    }
  }
  if (used < 0) throw NotLipschitzError("no differentiable sample found near x");
  const int mid_stage = (K - 1) / 2;
  if (used > mid_stage) {
    const GradientScan mid = scan_gradients(f, x, plan, mid_stage);
    if (last.max_norm > 8.0 * std::max(1.0, mid.max_norm))
      throw NotLipschitzError("gradient estimates explode as the radius shrinks");
  }
  out.gradients = std::move(last.gradients);
  out.steps = std::move(last.steps);
  out.radius = plan.radius(used);
  return out;
}

std::vector<Point> SubdiffApprox::hull_vertices() const {
  std::vector<Point> pts;
  for (const Point& g : gradients) {
    if (std::none_of(pts.begin(), pts.end(), [&](const Point& p) { return same_point(p, g); }))
      pts.push_back(g);
  }
  if (pts.empty()) return pts;
  const Eigen::Index n = pts.front().size();
  std::sort(pts.begin(), pts.end(), lex_less);
  if (n == 1) {
    if (pts.size() == 1) return pts;
    return {pts.front(), pts.back()};
  }
  if (n != 2 || pts.size() < 3) return pts;
  // Andrew's monotone chain.
  const auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double distance_fn(const DomainSet& X, const Point& y) {
  const Projection p = X.project(y);
  if (!p.converged || p.residual > 1e-8) throw EmptySetError("set appears to be empty: projections do not meet");
  return (y - p.point).norm();
}

}  // namespace approxmin
