#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/function.hpp"
#include "approxmin/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace testing {

using approxmin::Point;

inline approxmin::PiecewiseFn fn(const std::string& text) { return approxmin::parse_function(text); }

inline Point pt(double x) { return approxmin::make_point({x}); }
inline Point pt(double x, double y) { return approxmin::make_point({x, y}); }

inline double val(const approxmin::PiecewiseFn& f, const Point& x) { return f(x).value(); }

inline approxmin::DomainSet line() { return approxmin::DomainSet::full(1); }

inline const char* kSpike = "n=1; x1 == 0 : 1 ; else : 0";
inline const char* kNegSqrt = "n=1; x1 >= 0 : -sqrt(x1) ; else : -x1";
inline const char* kStepJump = "n=1; x1 <= 0 : x1 ; else : 1";

/// x on x >= 0 and sqrt(eps) x below.
inline std::string tilted(double eps) {
  return "n=1; x1 >= 0 : x1 ; else : " + std::to_string(std::sqrt(eps)) + "*x1";
}

/// Hausdorff distance between two finite point sets.
inline double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto one_way = [](const std::vector<Point>& p, const std::vector<Point>& q) {
    double worst = 0.0;
    for (const Point& x : p) {
      double best = INFINITY;
      for (const Point& y : q) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace testing
