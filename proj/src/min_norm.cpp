#include "approxmin/min_norm.hpp"

#include "approxmin/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace approxmin {

namespace {

struct Atom {
  std::vector<int> key;  // vertex index per polytope, then cone generator (-1 = none)
  Point q;
};

class Wolfe {
 public:
  Wolfe(const std::vector<WeightedPolytope>& polys, const std::vector<Point>& gens, double budget, Eigen::Index n)
      : polys_(polys), gens_(gens), budget_(budget), n_(n) {}

  Atom oracle(const Point& x) const {
    Atom a{{}, Point::Zero(n_)};
    for (const WeightedPolytope& P : polys_) {
      int best = 0;
      double bv = x.dot(P.vertices[0]);
      for (std::size_t i = 1; i < P.vertices.size(); ++i) {
        const double v = x.dot(P.vertices[i]);
        if (v < bv) {
          bv = v;
          best = static_cast<int>(i);
        }
      }
      a.key.push_back(best);
      a.q += P.weight * P.vertices[static_cast<std::size_t>(best)];
    }
    int cone = -1;
    double cv = 0.0;
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      const double v = x.dot(gens_[j]);
      if (v < cv) {
        cv = v;
        cone = static_cast<int>(j);
      }
    }
    a.key.push_back(cone);
    if (cone >= 0) a.q += budget_ * gens_[static_cast<std::size_t>(cone)];
    return a;
  }

  // Returns (point, cone mass fraction, converged, iterations).
  MinNormResult run(double tol, double& cone_mass) {
    std::vector<Atom> corral{oracle(Point::Ones(n_))};
    std::vector<double> lam{1.0};
    Point x = corral[0].q;
    double scale = std::max(1.0, x.norm());
    MinNormResult out;
    out.converged = false;
    int major = 0;
    for (; major < kMaxMajor; ++major) {
      if (x.norm() <= tol * 1e-2) {
        out.converged = true;
        break;
      }
      Atom a = oracle(x);
      scale = std::max(scale, a.q.norm());
      const double gap = x.squaredNorm() - x.dot(a.q);
      if (gap <= 1e-3 * tol * x.norm() || gap <= 1e-15 * scale * scale) {
        out.converged = true;
        break;
      }
      if (std::any_of(corral.begin(), corral.end(), [&](const Atom& c) { return c.key == a.key; })) {
        out.converged = gap <= 1e-9 * scale * scale;
        break;
      }
      corral.push_back(std::move(a));
      lam.push_back(0.0);
      for (int minor = 0; minor < static_cast<int>(corral.size()) + 5; ++minor) {
        const Eigen::VectorXd mu = affine_min(corral);
        if (mu.minCoeff() > 1e-14) {
          for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = mu[static_cast<Eigen::Index>(i)];
          break;
        }
        double theta = 1.0;
        for (std::size_t i = 0; i < lam.size(); ++i) {
          const double m = mu[static_cast<Eigen::Index>(i)];
          if (m <= 1e-14 && lam[i] - m > 0) theta = std::min(theta, lam[i] / (lam[i] - m));
        }
        for (std::size_t i = 0; i < lam.size(); ++i) lam[i] += theta * (mu[static_cast<Eigen::Index>(i)] - lam[i]);
        std::size_t keep = 0;
        for (std::size_t i = 0; i < lam.size(); ++i) {
          if (lam[i] > 1e-14) {
            if (keep != i) corral[keep] = std::move(corral[i]);
            lam[keep] = lam[i];
            ++keep;
          }
        }
        if (keep == 0) {  // numerical breakdown: restart from the newest atom
          keep = 1;
          if (corral.size() > 1) corral[0] = std::move(corral.back());
          lam[0] = 1.0;
        }
        corral.resize(keep);
        lam.resize(keep);
        double total = 0.0;
        for (double l : lam) total += l;
        for (double& l : lam) l /= total;
      }
      x = Point::Zero(n_);
      for (std::size_t i = 0; i < corral.size(); ++i) x += lam[i] * corral[i].q;
    }
    cone_mass = 0.0;
    for (std::size_t i = 0; i < corral.size(); ++i)
      if (corral[i].key.back() >= 0) cone_mass += lam[i];
    out.point = x;
    out.iterations = major;
    return out;
  }

 private:
  static constexpr int kMaxMajor = 10000;

  Eigen::VectorXd affine_min(const std::vector<Atom>& corral) const {
    const auto k = static_cast<Eigen::Index>(corral.size());
    Eigen::MatrixXd Q(n_, k);
    for (Eigen::Index i = 0; i < k; ++i) Q.col(i) = corral[static_cast<std::size_t>(i)].q;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k + 1, k + 1);
    K.topLeftCorner(k, k) = Q.transpose() * Q;
    K.block(0, k, k, 1).setOnes();
    K.block(k, 0, 1, k).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs[k] = 1.0;
    return K.completeOrthogonalDecomposition().solve(rhs).head(k);
  }

  const std::vector<WeightedPolytope>& polys_;
  const std::vector<Point>& gens_;
  double budget_;
  Eigen::Index n_;
};

}  // namespace

MinNormResult composite_set_distance(const std::vector<WeightedPolytope>& polytopes, double radius,
                                     const ConeRep& cone, double tol) {
  if (!(radius >= 0) || !std::isfinite(radius)) throw Error("ball radius must be finite and nonnegative");
  const auto n = static_cast<Eigen::Index>(cone.dim);
  double bound = 0.0;
  for (const WeightedPolytope& P : polytopes) {
    if (P.vertices.empty()) throw Error("empty polytope");
    if (!(P.weight >= 0)) throw Error("polytope weights must be nonnegative");
    double r = 0.0;
    for (const Point& v : P.vertices) {
      if (v.size() != n) throw DimensionError(cone.dim, static_cast<std::size_t>(v.size()));
      r = std::max(r, v.norm());
    }
    bound += P.weight * r;
  }
  if (cone.kind == ConeRep::Kind::kFull) return MinNormResult{0.0, Point::Zero(n), true, 0};

  std::vector<WeightedPolytope> polys = polytopes;
  if (polys.empty()) polys.push_back({1.0, {Point::Zero(n)}});
  const std::vector<Point> gens = cone.kind == ConeRep::Kind::kPolyhedral ? cone.generators : std::vector<Point>{};
  double budget = 2.0 * (bound + 1.0);
  MinNormResult res;
  for (int round = 0; round < 30; ++round) {
    double mass = 0.0;
    Wolfe w(polys, gens, budget, n);
    MinNormResult next = w.run(tol, mass);
    const bool improved = round == 0 || next.point.norm() < res.point.norm() - 1e-12 * (1.0 + bound);
    if (improved) res = std::move(next);
    // A saturated cone budget may be hiding a closer point.
    if (!improved || mass < 1.0 - 1e-9) break;
    budget *= 4.0;
  }
  res.distance = std::max(0.0, res.point.norm() - radius);
  return res;
}

}  // namespace approxmin
