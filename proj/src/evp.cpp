#include "approxmin/evp.hpp"

#include "approxmin/error.hpp"
#include "approxmin/minima.hpp"
#include "approxmin/nonsmooth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace approxmin {

namespace {

constexpr int kPolishScales = 48;
constexpr double kMoveTol = 1e-12;

struct Move {
  Point to;
  ExtReal value;
  double score;
};

// Best point of `cands` in the improvement set of xk under the descent rule.
std::optional<Move> best_move(const PiecewiseFn& f, const Point& xk, ExtReal fk, double slope,
                              const std::vector<Point>& cands) {
  std::optional<Move> best;
  for (const Point& c : cands) {
    if (same_point(c, xk)) continue;
    const ExtReal fc = f(c);
    if (fc.is_infinite()) continue;
    const double d = (c - xk).norm();
    // Moves must beat roundoff, or polishing creeps at machine-epsilon scale.
    if (!(fc.value() + slope * d <= fk.value() - kMoveTol * (1.0 + std::abs(fk.value())))) continue;
    const double score = fc.value() + slope * d;
    if (!best || score < best->score || (score == best->score && lex_less(c, best->to)))
      best = Move{c, fc, score};
  }
  return best;
}

std::vector<Point> pattern(const Point& x, const DomainSet& X, double h0) {
  const Eigen::Index n = x.size();
  std::vector<Point> dirs;
  for (Eigen::Index i = 0; i < n; ++i) {
    Point e = Point::Zero(n);
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
    for (Eigen::Index k = i + 1; k < n; ++k) {
      for (double s : {1.0, -1.0}) {
        Point d = Point::Zero(n);
        d[i] = 1.0;
        d[k] = s;
        dirs.push_back(d / std::sqrt(2.0));
        dirs.push_back(-d / std::sqrt(2.0));
      }
    }
  }
  std::vector<Point> out;
  for (int j = 0; j < kPolishScales; ++j) {
    const double h = std::ldexp(h0, -j);
    for (const Point& d : dirs) {
      Point c = x + h * d;
      if (X.contains(c)) out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

bool EvpCertificate::valid(double tol) const {
  return residual_i <= tol && distance_ii <= lambda + tol && violation_iii <= tol;
}

Verdict verify_evp_premise(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                           const SamplePlan& plan) {
  if (!(eps > 0) || !std::isfinite(eps)) throw Error("premise needs a finite eps > 0");
  if (!X.contains(x0)) throw Error("candidate point is not in X");
  const std::vector<Point> pts = universal_samples(X, x0, plan);
  Verdict v;
  v.samples = pts.size();
  v.tolerance = default_margin(f);
  std::optional<Point> arg;
  ExtReal inf = ExtReal::infinity();
  for (const Point& p : pts) {
    const ExtReal fp = f(p);
    if (fp < inf || (fp == inf && fp.is_finite() && lex_less(p, *arg))) {
      inf = fp;
      arg = p;
    }
  }
  if (inf.is_infinite()) {
    v.status = Status::kVacuous;
    v.note = "f = +inf on every sample: the statement is trivial";
    return v;
  }
  const ExtReal fx0 = f(x0);
  v.details.emplace_back("sampled_inf", inf.value());
  if (fx0 > inf + ExtReal(eps + v.tolerance)) {
    v.status = Status::kFails;
    v.violations = 1;
    v.note = "x0 is not an eps-minimizer on the samples";
    v.witness = Witness{*arg, {{"f(x0)", fx0}, {"f(x)", inf}, {"eps", eps}}};
    return v;
  }
  const BoundedBelow bb = check_bounded_below(f, X, plan);
  if (bb.verdict.fails()) {
    v.status = Status::kFails;
    v.violations = 1;
    v.note = "f is not bounded below";
    v.witness = bb.verdict.witness;
    return v;
  }
  const std::vector<Point> grid = grid_samples(X, plan.grid_res, sampling_window(X, plan));
  for (int i = 0; i < 5 && !grid.empty(); ++i) {
    const Point& p = grid[static_cast<std::size_t>(i) * (grid.size() - 1) / 4];
    const Verdict l = check_lsc(f, p, plan, X);
    if (l.fails()) {
      v.status = Status::kFails;
      v.violations = 1;
      v.note = "f is not lower semicontinuous on the grid";
      v.witness = l.witness;
      return v;
    }
  }
  v.status = Status::kHoldsOnSample;
  return v;
}

double evp_violation(const PiecewiseFn& f, const DomainSet& X, const Point& x_lambda, double slope,
                     int resolution, const SamplePlan& plan) {
  const ExtReal fl = f(x_lambda);
  if (fl.is_infinite()) return 0.0;
  double worst = 0.0;
  for (const Point& p : grid_samples(X, resolution, sampling_window(X, plan))) {
    const ExtReal fp = f(p);
    if (fp.is_infinite()) continue;
    worst = std::max(worst, fl.value() - fp.value() - slope * (p - x_lambda).norm());
  }
  return worst;
}

EvpCertificate ekeland_search(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                              double lambda, const SamplePlan& plan) {
  plan.validate();
  if (!(lambda > 0) || !std::isfinite(lambda)) throw Error("lambda must be a finite positive number");
  if (!(eps >= 0) || !std::isfinite(eps)) throw Error("eps must be finite and >= 0");
  if (!X.contains(x0)) throw Error("candidate point is not in X");

  EvpCertificate cert;
  cert.eps = eps;
  cert.lambda = lambda;
  cert.x0 = x0;
  cert.x_lambda = x0;
  cert.f_x0 = f(x0);
  cert.f_x_lambda = cert.f_x0;
  cert.grid_resolution = plan.grid_res;
  cert.trace = {x0};
  cert.trace_values = {cert.f_x0};

  const Window window = sampling_window(X, plan);
  std::vector<Point> grid = grid_samples(X, plan.grid_res, window);
  cert.grid_points = grid.size();
  const bool all_inf =
      cert.f_x0.is_infinite() && std::all_of(grid.begin(), grid.end(), [&](const Point& p) { return f(p).is_infinite(); });
  if (eps == 0.0 || all_inf) {
    cert.trivial = true;
    cert.note = eps == 0.0 ? "eps = 0: the statement is trivial" : "f = +inf: the statement is trivial";
    return cert;
  }
  const Verdict premise = verify_evp_premise(f, X, x0, eps, plan);
  if (!premise.holds()) throw Error("premise not verified: " + premise.note);

  const double slope = eps / lambda;
  grid.push_back(x0);
  const std::size_t cap = 10 * grid.size();
  double h0 = 0.0;
  for (Eigen::Index i = 0; i < window.lower.size(); ++i)
    h0 = std::max(h0, (window.upper[i] - window.lower[i]) / (plan.grid_res - 1));

  Point xk = x0;
  ExtReal fk = cert.f_x0;
  bool on_grid = true;
  for (std::size_t it = 0;; ++it) {
    if (it >= cap) throw NonConvergenceError("ekeland_search: iteration cap exceeded");
    std::optional<Move> m = on_grid ? best_move(f, xk, fk, slope, grid) : std::nullopt;
    if (!m) {
      on_grid = false;
      m = best_move(f, xk, fk, slope, pattern(xk, X, h0));
    }
    if (!m) break;
    xk = m->to;
    fk = m->value;
    cert.trace.push_back(xk);
    cert.trace_values.push_back(fk);
  }
  cert.x_lambda = xk;
  cert.f_x_lambda = fk;
  cert.residual_i = fk.value() - cert.f_x0.value();
  cert.distance_ii = (xk - x0).norm();
  cert.violation_iii = evp_violation(f, X, xk, slope, plan.grid_res, plan);
  return cert;
}

}  // namespace approxmin
