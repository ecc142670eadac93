#include "approxmin/domain.hpp"

#include "approxmin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace approxmin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dim(std::size_t expected, const Point& x) {
  if (static_cast<std::size_t>(x.size()) != expected)
    throw DimensionError(expected, static_cast<std::size_t>(x.size()));
}

}  // namespace

DomainSet DomainSet::full(std::size_t dim) {
  if (dim == 0) throw Error("domain dimension must be positive");
  return DomainSet(FullSpace{dim});
}

DomainSet DomainSet::box(std::vector<double> lower, std::vector<double> upper,
                         std::vector<bool> lower_open, std::vector<bool> upper_open) {
  const std::size_t n = lower.size();
  if (n == 0 || upper.size() != n) throw Error("box bounds must be nonempty and equally sized");
  if (lower_open.empty()) lower_open.assign(n, false);
  if (upper_open.empty()) upper_open.assign(n, false);
  if (lower_open.size() != n || upper_open.size() != n) throw Error("box open flags size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i])) throw Error("box bound is NaN");
    if (lower[i] == kInf || upper[i] == -kInf) throw Error("box bound on the wrong side of infinity");
  }
  return DomainSet(Box{std::move(lower), std::move(upper), std::move(lower_open), std::move(upper_open)});
}

DomainSet DomainSet::halfspace(Point normal, double offset) {
  if (normal.size() == 0) throw Error("halfspace normal must be nonempty");
  if (normal.norm() == 0.0) throw Error("halfspace normal must be nonzero");
  return DomainSet(Halfspace{std::move(normal), offset});
}

DomainSet DomainSet::ball(Point center, double radius, bool open) {
  if (center.size() == 0) throw Error("ball center must be nonempty");
  if (!(radius >= 0.0) || radius == kInf) throw Error("ball radius must be finite and nonnegative");
  return DomainSet(Ball{std::move(center), radius, open});
}

DomainSet DomainSet::intersection(std::vector<DomainSet> members) {
  if (members.empty()) throw Error("intersection needs at least one member");
  const std::size_t n = members.front().dim();
  for (const DomainSet& m : members)
    if (m.dim() != n) throw DimensionError(n, m.dim());
  return DomainSet(Intersection{std::move(members)});
}

DomainSet operator&(const DomainSet& a, const DomainSet& b) {
  std::vector<DomainSet> members;
  for (const DomainSet* s : {&a, &b}) {
    if (const auto* i = std::get_if<DomainSet::Intersection>(&s->rep())) {
      members.insert(members.end(), i->members.begin(), i->members.end());
    } else {
      members.push_back(*s);
    }
  }
  return DomainSet::intersection(std::move(members));
}

std::size_t DomainSet::dim() const {
  return std::visit(Overloaded{
                        [](const FullSpace& s) { return s.dim; },
                        [](const Box& s) { return s.lower.size(); },
                        [](const Halfspace& s) { return static_cast<std::size_t>(s.normal.size()); },
                        [](const Ball& s) { return static_cast<std::size_t>(s.center.size()); },
                        [](const Intersection& s) { return s.members.front().dim(); },
                    },
                    rep_);
}

bool DomainSet::contains(const Point& x) const {
  check_dim(dim(), x);
  return std::visit(
      Overloaded{
          [](const FullSpace&) { return true; },
          [&](const Box& s) {
            for (std::size_t i = 0; i < s.lower.size(); ++i) {
              const double v = x[static_cast<Eigen::Index>(i)];
              if (s.lower_open[i] ? !(v > s.lower[i]) : !(v >= s.lower[i])) return false;
              if (s.upper_open[i] ? !(v < s.upper[i]) : !(v <= s.upper[i])) return false;
            }
            return true;
          },
          [&](const Halfspace& s) { return s.normal.dot(x) <= s.offset; },
          [&](const Ball& s) {
            const double d = (x - s.center).norm();
            return s.open ? d < s.radius : d <= s.radius;
          },
          [&](const Intersection& s) {
            return std::all_of(s.members.begin(), s.members.end(),
                               [&](const DomainSet& m) { return m.contains(x); });
          },
      },
      rep_);
}

Projection DomainSet::project(const Point& y) const {
  check_dim(dim(), y);
  return std::visit(
      Overloaded{
          [&](const FullSpace&) { return Projection{y}; },
          [&](const Box& s) {
            Point p = y;
            for (Eigen::Index i = 0; i < p.size(); ++i) {
              const auto k = static_cast<std::size_t>(i);
              p[i] = std::clamp(p[i], s.lower[k], s.upper[k]);
            }
            return Projection{p};
          },
          [&](const Halfspace& s) {
            const double excess = s.normal.dot(y) - s.offset;
            if (excess <= 0) return Projection{y};
            Point p = y - (excess / s.normal.squaredNorm()) * s.normal;
            return Projection{p};
          },
          [&](const Ball& s) {
            const Point d = y - s.center;
            const double r = d.norm();
            if (r <= s.radius) return Projection{y};
            return Projection{Point(s.center + (s.radius / r) * d)};
          },
          [&](const Intersection& s) {
            // Dykstra: converges to the projection, not just a feasible point.
            const std::size_t m = s.members.size();
            std::vector<Point> corr(m, Point::Zero(y.size()));
            Point x = y;
            int it = 0;
            for (; it < kMaxProjectionIterations; ++it) {
              const Point before = x;
              for (std::size_t i = 0; i < m; ++i) {
                const Point shifted = x + corr[i];
                const Point z = s.members[i].project(shifted).point;
                corr[i] = shifted - z;
                x = z;
              }
              if ((x - before).norm() <= 1e-15 * (1.0 + x.norm())) break;
            }
            double residual = 0.0;
            for (const DomainSet& mem : s.members)
              residual = std::max(residual, (x - mem.project(x).point).norm());
            return Projection{x, residual, it + 1, residual <= 1e-9 * (1.0 + x.norm())};
          },
      },
      rep_);
}

Window DomainSet::bounding_box() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Window w{Point::Constant(n, -kInf), Point::Constant(n, kInf)};
  std::visit(Overloaded{
                 [](const FullSpace&) {},
                 [&](const Box& s) {
                   for (Eigen::Index i = 0; i < n; ++i) {
                     w.lower[i] = s.lower[static_cast<std::size_t>(i)];
                     w.upper[i] = s.upper[static_cast<std::size_t>(i)];
                   }
                 },
                 [&](const Halfspace& s) {
                   Eigen::Index nonzero = 0, axis = 0;
                   for (Eigen::Index i = 0; i < n; ++i) {
                     if (s.normal[i] != 0.0) {
                       ++nonzero;
                       axis = i;
                     }
                   }
                   if (nonzero != 1) return;
                   const double bound = s.offset / s.normal[axis];
                   if (s.normal[axis] > 0) {
                     w.upper[axis] = bound;
                   } else {
                     w.lower[axis] = bound;
                   }
                 },
                 [&](const Ball& s) {
                   w.lower = s.center.array() - s.radius;
                   w.upper = s.center.array() + s.radius;
                 },
                 [&](const Intersection& s) {
                   for (const DomainSet& m : s.members) {
                     const Window b = m.bounding_box();
                     w.lower = w.lower.cwiseMax(b.lower);
                     w.upper = w.upper.cwiseMin(b.upper);
                   }
                 },
             },
             rep_);
  return w;
}

Window default_window(const DomainSet& X) {
  Window w = X.bounding_box();
  for (Eigen::Index i = 0; i < w.lower.size(); ++i) {
    const bool lo = std::isfinite(w.lower[i]);
    const bool hi = std::isfinite(w.upper[i]);
    if (lo && !hi) {
      w.upper[i] = w.lower[i] + 4.0;
    } else if (!lo && hi) {
      w.lower[i] = w.upper[i] - 4.0;
    } else if (!lo && !hi) {
      w.lower[i] = -2.0;
      w.upper[i] = 2.0;
    }
  }
  return w;
}

}  // namespace approxmin
