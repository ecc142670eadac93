#include "approxmin/cone.hpp"

#include "approxmin/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace approxmin {

namespace {

constexpr double kZero = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::MatrixXd columns(const std::vector<Point>& vs, Eigen::Index dim) {
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
  return m;
}

bool in_cone(const std::vector<Point>& gens, const Point& v, double tol) {
  if (v.norm() <= tol) return true;
  if (gens.empty()) return false;
  const Eigen::MatrixXd G = columns(gens, v.size());
  const Eigen::VectorXd c = nnls(G, v);
  return (G * c - v).norm() <= tol * std::max(1.0, v.norm());
}

Point clean(Point v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < 1e-14) v[i] = 0.0;
  }
  return v;
}

/// Reduced row echelon basis of span(rows), each row normalized.
std::vector<Point> rref_basis(const std::vector<Point>& rows, Eigen::Index dim) {
  if (rows.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  Eigen::Index lead = 0;
  const Eigen::Index nrows = m.rows();
  Eigen::Index r = 0;
  for (; r < nrows && lead < dim; ++lead) {
    Eigen::Index pivot;
    const double best = m.col(lead).tail(nrows - r).cwiseAbs().maxCoeff(&pivot);
    if (best <= kZero) continue;
    pivot += r;
    m.row(r).swap(m.row(pivot));
    m.row(r) /= m(r, lead);
    for (Eigen::Index i = 0; i < nrows; ++i) {
      if (i != r) m.row(i) -= m(i, lead) * m.row(r);
    }
    ++r;
  }
  std::vector<Point> out;
  for (Eigen::Index i = 0; i < r; ++i) out.push_back(clean(m.row(i).transpose().normalized()));
  return out;
}

std::vector<Point> normalized_nonzero(const std::vector<Point>& vs) {
  std::vector<Point> out;
  for (const Point& v : vs) {
    const double n = v.norm();
    if (n > 1e-14) out.push_back(v / n);
  }
  return out;
}

void dedupe(std::vector<Point>& vs) {
  std::vector<Point> out;
  for (const Point& v : vs) {
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const Point& u) { return (u - v).norm() <= kZero; });
    if (!seen) out.push_back(v);
  }
  vs = std::move(out);
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 0) return x;
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()) * std::max(1.0, b.norm());

  const auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    const Eigen::VectorXd sp = Ap.completeOrthogonalDecomposition().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = sp[static_cast<Eigen::Index>(k)];
    return s;
  };

  for (int outer = 0; outer < 3 * static_cast<int>(n) + 10; ++outer) {
    const Eigen::VectorXd w = A.transpose() * (b - A * x);
    Eigen::Index t = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > wmax) {
        wmax = w[j];
        t = j;
      }
    }
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = true;
    for (int inner = 0; inner < 3 * static_cast<int>(n) + 10; ++inner) {
      const Eigen::VectorXd s = solve_passive();
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0) {
          feasible = false;
          const double denom = x[j] - s[j];
          if (denom > 0) alpha = std::min(alpha, x[j] / denom);
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  return x;
}

bool ConeRep::contains(const Point& v, double tol) const {
  switch (kind) {
    case Kind::kFull: return true;
    case Kind::kTrivial: return v.norm() <= tol;
    case Kind::kPolyhedral: return in_cone(generators, v, tol);
  }
  return false;
}

bool same_generators(const ConeRep& a, const ConeRep& b, double tol) {
  if (a.kind != b.kind || a.dim != b.dim || a.generators.size() != b.generators.size()) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    if ((a.generators[i] - b.generators[i]).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

ConeRep cone_from_generators(std::size_t dim, const std::vector<Point>& generators) {
  const auto n = static_cast<Eigen::Index>(dim);
  for (const Point& g : generators)
    if (g.size() != n) throw DimensionError(dim, static_cast<std::size_t>(g.size()));
  std::vector<Point> gens = normalized_nonzero(generators);
  dedupe(gens);
  if (gens.empty()) return ConeRep{ConeRep::Kind::kTrivial, dim, {}};

  std::vector<Point> line_gens;
  for (const Point& g : gens)
    if (in_cone(gens, Point(-g), 1e-9)) line_gens.push_back(g);
  const std::vector<Point> lineality = rref_basis(line_gens, n);
  if (static_cast<std::size_t>(lineality.size()) == dim) return ConeRep{ConeRep::Kind::kFull, dim, {}};

  Eigen::MatrixXd Q;
  if (!lineality.empty()) {
    Q = columns(lineality, n).householderQr().householderQ() *
        Eigen::MatrixXd::Identity(n, static_cast<Eigen::Index>(lineality.size()));
  }
  std::vector<Point> pointed;
  for (const Point& g : gens) {
    Point p = lineality.empty() ? g : Point(g - Q * (Q.transpose() * g));
    if (p.norm() > 1e-9) pointed.push_back(p.normalized());
  }
  dedupe(pointed);
  // Drop rays that the remaining ones already generate.
  for (std::size_t i = 0; i < pointed.size();) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < pointed.size(); ++j)
      if (j != i) others.push_back(pointed[j]);
    if (in_cone(others, pointed[i], 1e-9)) {
      pointed.erase(pointed.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }

  ConeRep out{ConeRep::Kind::kPolyhedral, dim, {}};
  for (const Point& b : lineality) {
    out.generators.push_back(b);
    out.generators.push_back(clean(-b));
  }
  for (const Point& p : pointed) out.generators.push_back(clean(p));
  std::sort(out.generators.begin(), out.generators.end(), lex_less);
  return out;
}

ConeRep cone_from_inequalities(std::size_t dim, const std::vector<Point>& rows) {
  const auto n = static_cast<Eigen::Index>(dim);
  for (const Point& r : rows)
    if (r.size() != n) throw DimensionError(dim, static_cast<std::size_t>(r.size()));
  std::vector<Point> a = normalized_nonzero(rows);
  dedupe(a);
  if (a.empty()) return ConeRep{ConeRep::Kind::kFull, dim, {}};

  Eigen::MatrixXd A(static_cast<Eigen::Index>(a.size()), n);
  for (std::size_t i = 0; i < a.size(); ++i) A.row(static_cast<Eigen::Index>(i)) = a[i].transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(kZero);
  const Eigen::Index rank = lu.rank();
  std::vector<Point> lineality;
  if (rank < n) {
    const Eigen::MatrixXd K = lu.kernel();
    for (Eigen::Index j = 0; j < K.cols(); ++j) lineality.push_back(K.col(j));
  }

  std::vector<Point> gens;
  for (const Point& l : lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  // Extreme rays meet rank-1 independent active rows inside the lineality
  // complement.
  const auto k = static_cast<std::size_t>(rank - 1);
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    if (chosen.size() == k) {
      Eigen::MatrixXd M(static_cast<Eigen::Index>(k + lineality.size()), n);
      Eigen::Index r = 0;
      for (std::size_t i : chosen) M.row(r++) = a[i].transpose();
      for (const Point& l : lineality) M.row(r++) = l.transpose();
      if (M.rows() == 0) return;
      Eigen::FullPivLU<Eigen::MatrixXd> sub(M);
      sub.setThreshold(kZero);
      if (sub.rank() != n - 1) return;
      const Point d = sub.kernel().col(0).normalized();
      for (double sign : {1.0, -1.0}) {
        const Point v = sign * d;
        if ((A * v).maxCoeff() <= 1e-9) gens.push_back(v);
      }
      return;
    }
    for (std::size_t i = start; i < a.size(); ++i) {
      chosen.push_back(i);
      visit(i + 1);
      chosen.pop_back();
    }
  };
  if (rank >= 1) {
    if (k == 0 && lineality.empty()) {
      // rank 1 in 1-D: the complement of the lineality is the whole line.
      for (double sign : {1.0, -1.0}) {
        Point v = Point::Zero(n);
        v[0] = sign;
        if ((A * v).maxCoeff() <= 1e-9) gens.push_back(v);
      }
    } else {
      visit(0);
    }
  }
  return cone_from_generators(dim, gens);
}

ConeRep polar(const ConeRep& c) {
  switch (c.kind) {
    case ConeRep::Kind::kFull: return ConeRep{ConeRep::Kind::kTrivial, c.dim, {}};
    case ConeRep::Kind::kTrivial: return ConeRep{ConeRep::Kind::kFull, c.dim, {}};
    case ConeRep::Kind::kPolyhedral: return cone_from_inequalities(c.dim, c.generators);
  }
  return c;
}

std::vector<Point> active_normals(const DomainSet& X, const Point& x) {
  if (!X.contains(x)) throw Error("point is not in the set");
  const Eigen::Index n = x.size();
  std::vector<Point> out;
  const auto unit = [n](Eigen::Index i, double sign) {
    Point e = Point::Zero(n);
    e[i] = sign;
    return e;
  };
  std::visit(Overloaded{
                 [](const DomainSet::FullSpace&) {},
                 [&](const DomainSet::Box& s) {
                   for (Eigen::Index i = 0; i < n; ++i) {
                     const auto k = static_cast<std::size_t>(i);
                     if (std::isfinite(s.lower[k]) &&
                         x[i] <= s.lower[k] + 1e-12 * std::max(1.0, std::abs(s.lower[k])))
                       out.push_back(unit(i, -1.0));
                     if (std::isfinite(s.upper[k]) &&
                         x[i] >= s.upper[k] - 1e-12 * std::max(1.0, std::abs(s.upper[k])))
                       out.push_back(unit(i, 1.0));
                   }
                 },
                 [&](const DomainSet::Halfspace& s) {
                   if (s.normal.dot(x) >= s.offset - 1e-12 * std::max(1.0, std::abs(s.offset)))
                     out.push_back(s.normal.normalized());
                 },
                 [&](const DomainSet::Ball& s) {
                   if (s.open) return;
                   const Point d = x - s.center;
                   const double r = d.norm();
                   if (s.radius == 0.0) {
                     for (Eigen::Index i = 0; i < n; ++i) {
                       out.push_back(unit(i, 1.0));
                       out.push_back(unit(i, -1.0));
                     }
                   } else if (r >= s.radius - 1e-12 * std::max(1.0, s.radius)) {
                     out.push_back(d / r);
                   }
                 },
                 [&](const DomainSet::Intersection& s) {
                   for (const DomainSet& m : s.members) {
                     std::vector<Point> more = active_normals(m, x);
                     out.insert(out.end(), more.begin(), more.end());
                   }
                 },
             },
             X.rep());
  return out;
}

ConeRep tangent_cone(const DomainSet& X, const Point& x) {
  return cone_from_inequalities(X.dim(), active_normals(X, x));
}

ConeRep normal_cone(const DomainSet& X, const Point& x) {
  return cone_from_generators(X.dim(), active_normals(X, x));
}

}  // namespace approxmin
