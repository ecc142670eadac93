#pragma once

#include "approxmin/types.hpp"

#include <variant>
#include <vector>

namespace approxmin {

/// Axis-aligned finite box used as a sampling window.
struct Window {
  Point lower;
  Point upper;
};

struct Projection {
  Point point;
  double residual = 0.0;  // max distance to a member (intersections only)
  int iterations = 0;
  bool converged = true;
};

/// Structured subset of R^n. Membership is exact; projection is exact for
/// every kind except intersections, which use Dykstra's alternating
/// projection capped at `kMaxProjectionIterations` sweeps.
class DomainSet {
 public:
  static constexpr int kMaxProjectionIterations = 10000;

  struct FullSpace {
    std::size_t dim;
  };
  /// Per-coordinate bounds; +-inf for unbounded sides. Open flags only
  /// matter for finite bounds.
  struct Box {
    std::vector<double> lower, upper;
    std::vector<bool> lower_open, upper_open;
  };
  /// Closed halfspace {x : normal . x <= offset}.
  struct Halfspace {
    Point normal;
    double offset;
  };
  struct Ball {
    Point center;
    double radius;
    bool open;
  };
  struct Intersection {
    std::vector<DomainSet> members;
  };

  using Rep = std::variant<FullSpace, Box, Halfspace, Ball, Intersection>;

  static DomainSet full(std::size_t dim);
  static DomainSet box(std::vector<double> lower, std::vector<double> upper,
                       std::vector<bool> lower_open = {}, std::vector<bool> upper_open = {});
  static DomainSet interval(double lower, double upper) { return box({lower}, {upper}); }
  static DomainSet halfspace(Point normal, double offset);
  static DomainSet ball(Point center, double radius, bool open = true);
  static DomainSet intersection(std::vector<DomainSet> members);

  std::size_t dim() const;
  const Rep& rep() const { return rep_; }

  bool contains(const Point& x) const;

  /// Nearest point of the closure.
  Projection project(const Point& y) const;

  /// Coordinate-wise hull; +-inf where unbounded.
  Window bounding_box() const;

 private:
  explicit DomainSet(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

DomainSet operator&(const DomainSet& a, const DomainSet& b);

/// Finite sampling window: finite bounds of X are kept, a missing side is
/// placed 4 units from the other one, and fully unbounded axes get [-2, 2].
Window default_window(const DomainSet& X);

}  // namespace approxmin
