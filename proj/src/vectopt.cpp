#include "approxmin/vectopt.hpp"

#include "approxmin/error.hpp"
#include "approxmin/minima.hpp"
#include "approxmin/nonsmooth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace approxmin {

VectorProblem::VectorProblem(std::vector<PiecewiseFn> objectives_, std::vector<PiecewiseFn> constraints_,
                             DomainSet X_)
    : objectives(std::move(objectives_)), constraints(std::move(constraints_)), X(std::move(X_)) {
  if (objectives.empty()) throw Error("a vector problem needs at least one objective");
  for (const auto* list : {&objectives, &constraints}) {
    for (const PiecewiseFn& f : *list)
      if (f.dim() != X.dim()) throw DimensionError(X.dim(), f.dim());
  }
}

bool VectorProblem::feasible(const Point& x) const {
  if (!X.contains(x)) return false;
  return std::all_of(constraints.begin(), constraints.end(), [&](const PiecewiseFn& g) { return g(x) <= ExtReal(0.0); });
}

double VectorProblem::margin() const {
  double m = 0.0;
  for (const PiecewiseFn& f : objectives) m = std::max(m, default_margin(f));
  return m;
}

namespace {

Verdict dominance_scan(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha, double delta,
                       const SamplePlan& plan) {
  if (!(delta > 0)) throw Error("delta must be positive");
  if (alpha.size() != vp.objectives.size()) throw Error("alpha needs one entry per objective");
  if (!vp.feasible(x0)) throw Error("candidate point is not feasible");
  std::size_t primary = 0;
  std::vector<Point> pts;
  {
    const std::vector<Point> all =
        universal_samples(vp.X, x0, plan, std::isfinite(delta) ? std::optional(delta) : std::nullopt, &primary);
    std::size_t kept_primary = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!vp.feasible(all[i])) continue;
      if (i < primary) ++kept_primary;
      pts.push_back(all[i]);
    }
    primary = kept_primary;
  }

  const std::size_t p = vp.objectives.size();
  const double margin = vp.margin();
  std::vector<ExtReal> f0(p);
  for (std::size_t i = 0; i < p; ++i) f0[i] = vp.objectives[i](x0);

  Verdict v;
  v.tolerance = margin;
  v.samples = pts.size();
  if (pts.empty()) {
    v.status = Status::kVacuous;
    v.note = "no feasible samples";
    return v;
  }
  std::optional<Point> worst_point;
  double worst = 0.0;
  std::vector<ExtReal> worst_vals;
  std::vector<ExtReal> fx(p);
  bool primary_hit = false;
  for (std::size_t idx = 0; idx < pts.size(); ++idx) {
    const Point& x = pts[idx];
    const double dist = (x - x0).norm();
    bool skip = false;
    for (std::size_t i = 0; i < p && !skip; ++i) {
      fx[i] = vp.objectives[i](x);
      skip = fx[i].is_infinite();
    }
    if (skip) continue;
    // Same arithmetic as the scalar slope scan so p = 1 reproduces it bit for bit.
    bool all_le = true, some_strict = false;
    double excess = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double shifted = fx[i].value() + 0.0 + alpha[i] * dist;
      if (!(shifted <= f0[i].value())) all_le = false;
      const double rhs = shifted + margin;
      if (f0[i].value() > rhs) some_strict = true;
      excess += f0[i].is_infinite() ? std::numeric_limits<double>::infinity() : f0[i].value() - rhs;
    }
    if (!all_le || !some_strict) continue;
    ++v.violations;
    if (idx < primary) primary_hit = true;
    else if (primary_hit) continue;
    if (!worst_point || excess > worst || (excess == worst && lex_less(x, *worst_point))) {
      worst = excess;
      worst_point = x;
      worst_vals = fx;
    }
  }
  if (!worst_point) {
    v.status = Status::kHoldsOnSample;
    return v;
  }
  v.status = Status::kFails;
  Witness w{*worst_point, {}};
  for (std::size_t i = 0; i < p; ++i) {
    const std::string k = std::to_string(i + 1);
    w.values.emplace_back("f" + k + "(x0)", f0[i]);
    w.values.emplace_back("f" + k + "(x)", worst_vals[i]);
    w.values.emplace_back("alpha" + k, alpha[i]);
  }
  w.values.emplace_back("dist", (*worst_point - x0).norm());
  v.witness = std::move(w);
  return v;
}

}  // namespace

Verdict check_efficient(const VectorProblem& vp, const Point& x0, double delta, const SamplePlan& plan) {
  return dominance_scan(vp, x0, std::vector<double>(vp.objectives.size(), 0.0), delta, plan);
}

Verdict check_quasi_efficient(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha,
                              double delta, const SamplePlan& plan) {
  for (double a : alpha)
    if (!(a > 0) || !std::isfinite(a)) throw Error("alpha must be strictly positive and finite");
  return dominance_scan(vp, x0, alpha, delta, plan);
}

AlphaChoice alpha_from_lipschitz(const VectorProblem& vp, const Point& x0, double radius, const SamplePlan& plan) {
  if (!(radius > 0) || !std::isfinite(radius)) throw Error("radius must be finite and positive");
  AlphaChoice out;
  out.delta = radius;
  for (const PiecewiseFn& f : vp.objectives) {
    const double L = local_lipschitz(f, x0, radius, plan);
    out.lipschitz.push_back(L);
    out.alpha.push_back(1.1 * L + 0.01);
  }
  return out;
}

}  // namespace approxmin
