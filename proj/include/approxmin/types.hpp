#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <span>
#include <vector>

namespace approxmin {

using Point = Eigen::VectorXd;

inline Point make_point(std::initializer_list<double> values) {
  Point p(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p[i++] = v;
  return p;
}

inline Point make_point(std::span<const double> values) {
  return Eigen::Map<const Point>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline std::span<const double> as_span(const Point& p) {
  return {p.data(), static_cast<std::size_t>(p.size())};
}

inline std::vector<double> to_vector(const Point& p) { return {p.data(), p.data() + p.size()}; }

/// Strict lexicographic order, used for deterministic tie-breaking.
inline bool lex_less(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

inline bool same_point(const Point& a, const Point& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace approxmin
