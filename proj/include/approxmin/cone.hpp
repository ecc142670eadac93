#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/types.hpp"

#include <vector>

namespace approxmin {

/// Finitely generated convex cone cone(generators).
///
/// Representations are canonical: a lineality space is listed as +-b for the
/// normalized rows of its reduced row echelon basis, the pointed part as its
/// normalized extreme rays projected onto the lineality complement, and the
/// list is sorted. Two equal cones therefore compare equal generator by
/// generator.
struct ConeRep {
  enum class Kind { kFull, kPolyhedral, kTrivial };

  Kind kind = Kind::kTrivial;
  std::size_t dim = 0;
  std::vector<Point> generators;

  bool contains(const Point& v, double tol = 1e-9) const;
};

bool same_generators(const ConeRep& a, const ConeRep& b, double tol = 1e-9);

ConeRep cone_from_generators(std::size_t dim, const std::vector<Point>& generators);

/// {v : row . v <= 0 for every row}.
ConeRep cone_from_inequalities(std::size_t dim, const std::vector<Point>& rows);

/// Negative polar {d : d . v <= 0 for all v in C}.
ConeRep polar(const ConeRep& c);

/// Unit outward normals of the constraints of X active at x. Throws when x
/// is not in X.
std::vector<Point> active_normals(const DomainSet& X, const Point& x);

/// Tangent cone of a convex structured set; {v : a . v <= 0} over the active
/// normals a. Intersections assume the members meet regularly at x.
ConeRep tangent_cone(const DomainSet& X, const Point& x);

/// Normal cone, the polar of tangent_cone: cone(active normals).
ConeRep normal_cone(const DomainSet& X, const Point& x);

/// Nonnegative least squares min ||A c - b||, c >= 0 (Lawson-Hanson).
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace approxmin
