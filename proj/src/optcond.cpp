#include "approxmin/optcond.hpp"

#include "approxmin/error.hpp"
#include "approxmin/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace approxmin {

namespace {

constexpr double kActiveTol = 1e-8;

struct FjData {
  std::vector<SubdiffApprox> fsub, gsub;
  std::vector<std::vector<Point>> fhull, ghull;
  std::vector<double> gval;
  ConeRep cone;
};

FjData prepare(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha, const SamplePlan& plan) {
  if (alpha.size() != vp.objectives.size()) throw Error("alpha needs one entry per objective");
  for (double a : alpha)
    if (!(a > 0) || !std::isfinite(a)) throw Error("alpha must be strictly positive and finite");
  if (!vp.feasible(x0)) throw Error("candidate point is not feasible");
  FjData d;
  for (const PiecewiseFn& f : vp.objectives) {
    d.fsub.push_back(clarke_subdiff(f, x0, plan));
    d.fhull.push_back(d.fsub.back().hull_vertices());
  }
  for (const PiecewiseFn& g : vp.constraints) {
    d.gsub.push_back(clarke_subdiff(g, x0, plan));
    d.ghull.push_back(d.gsub.back().hull_vertices());
    d.gval.push_back(g(x0).finite());
  }
  d.cone = normal_cone(vp.X, x0);
  return d;
}

MinNormResult residual(const FjData& d, const std::vector<double>& alpha, const std::vector<double>& lambda,
                       const std::vector<double>& mu) {
  std::vector<WeightedPolytope> polys;
  double radius = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > 0) polys.push_back({lambda[i], d.fhull[i]});
    radius += lambda[i] * alpha[i];
  }
  for (std::size_t j = 0; j < mu.size(); ++j)
    if (mu[j] > 0) polys.push_back({mu[j], d.ghull[j]});
  return composite_set_distance(polys, radius, d.cone);
}

FJCertificate certify(const FjData& d, const std::vector<double>& alpha, std::vector<double> lambda,
                      std::vector<double> mu) {
  double total = 0.0;
  for (const auto* v : {&lambda, &mu}) {
    for (double x : *v) {
      if (!(x >= 0) || !std::isfinite(x)) throw Error("multipliers must be finite and nonnegative");
      total += x;
    }
  }
  if (total == 0.0) throw Error("multipliers must not all be zero");
  for (double& x : lambda) x /= total;
  for (double& x : mu) x /= total;
  const MinNormResult r = residual(d, alpha, lambda, mu);
  FJCertificate c;
  c.lambda = std::move(lambda);
  c.mu = std::move(mu);
  c.alpha = alpha;
  c.residual = r.distance;
  c.converged = r.converged;
  for (std::size_t j = 0; j < c.mu.size(); ++j) c.slackness.push_back(c.mu[j] * d.gval[j]);
  c.objective_subdiffs = d.fsub;
  c.constraint_subdiffs = d.gsub;
  c.normal_cone = d.cone;
  return c;
}

// All compositions of `total` into `parts` nonnegative integers, lexicographic.
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      cur[static_cast<std::size_t>(idx)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

}  // namespace

FJCertificate check_fritz_john(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha,
                               const std::vector<double>& lambda, const std::vector<double>& mu,
                               const SamplePlan& plan) {
  if (lambda.size() != vp.objectives.size() || mu.size() != vp.constraints.size())
    throw Error("multiplier count does not match the problem");
  const FjData d = prepare(vp, x0, alpha, plan);
  return certify(d, alpha, lambda, mu);
}

MultiplierSearch find_multipliers(const VectorProblem& vp, const Point& x0, const std::vector<double>& alpha,
                                  const SamplePlan& plan, double threshold) {
  const FjData d = prepare(vp, x0, alpha, plan);
  const std::size_t p = vp.objectives.size(), m = vp.constraints.size();
  // Free coordinates: every lambda_i and the mu_j of active constraints.
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < p; ++i) free.push_back(i);
  for (std::size_t j = 0; j < m; ++j)
    if (d.gval[j] >= -kActiveTol) free.push_back(p + j);

  const auto split = [&](const std::vector<double>& w) {
    std::vector<double> lam(p, 0.0), mu(m, 0.0);
    for (std::size_t k = 0; k < free.size(); ++k) {
      const std::size_t c = free[k];
      (c < p ? lam[c] : mu[c - p]) = w[k];
    }
    return std::make_pair(lam, mu);
  };
  const auto eval = [&](const std::vector<double>& w) {
    const auto [lam, mu] = split(w);
    return residual(d, alpha, lam, mu).distance;
  };

  constexpr int kGrid = 8;
  const std::vector<std::vector<int>> comps = compositions(kGrid, static_cast<int>(free.size()));
  std::vector<std::vector<double>> cands;
  for (const auto& c : comps) {
    std::vector<double> w;
    for (int v : c) w.push_back(static_cast<double>(v) / kGrid);
    cands.push_back(std::move(w));
  }
  std::vector<double> scores(cands.size());
  parallel_for(cands.size(), plan.threads, [&](std::size_t i) { scores[i] = eval(cands[i]); });
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (scores[i] < scores[best_i]) best_i = i;

  MultiplierSearch out;
  out.threshold = threshold;
  out.candidates = cands.size();
  std::vector<double> w = cands[best_i];
  double best = scores[best_i];
  double step = 1.0 / kGrid;
  const std::size_t k = free.size();
  while (best > threshold && step >= 1e-6 && out.candidates < 20000) {
    std::vector<std::vector<double>> moves;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b || w[b] < step) continue;
        std::vector<double> t = w;
        t[a] += step;
        t[b] -= step;
        moves.push_back(std::move(t));
      }
    }
    std::vector<double> ms(moves.size());
    parallel_for(moves.size(), plan.threads, [&](std::size_t i) { ms[i] = eval(moves[i]); });
    out.candidates += moves.size();
    std::size_t arg = moves.size();
    for (std::size_t i = 0; i < moves.size(); ++i)
      if (ms[i] < best && (arg == moves.size() || ms[i] < ms[arg])) arg = i;
    if (arg == moves.size()) {
      step /= 2;
    } else {
      w = moves[arg];
      best = ms[arg];
    }
  }
  const auto [lam, mu] = split(w);
  out.best = certify(d, alpha, lam, mu);
  out.success = out.best.residual <= threshold;
  return out;
}

}  // namespace approxmin
