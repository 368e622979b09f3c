#pragma once

// Oriented spheres of R^3 as unit spacelike vectors of R^5_1, their mutual
// Lorentz separation, and intersections of a sphere with circles / point pairs.

#include <vector>

#include <Eigen/Dense>

#include "confarc/minkowski.hpp"

namespace confarc {

/// A sphere (center, radius) or a plane {x : normal . x = offset}.
/// orientation +1 means the normal points outward (sphere) or along `normal` (plane).
struct EuclideanSphere {
  enum class Kind { sphere, plane };
  Kind kind = Kind::sphere;
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;
  int orientation = 1;

  static EuclideanSphere sphere(const Vec3& center, double radius, int orientation = 1);
  static EuclideanSphere plane(const Vec3& normal, double offset, int orientation = 1);
};

/// k m + n for a light-cone vector m and a unit spacelike n orthogonal to it.
/// Works in any dimension (R^4_1 for circles, R^5_1 for spheres).
template <typename D1, typename D2>
Eigen::Matrix<double, D1::RowsAtCompileTime, 1> sphere_from_curvature_normal(
    const Eigen::MatrixBase<D1>& m, const Eigen::MatrixBase<D2>& n, double k, double tol = 1e-9) {
  const double scale = m.squaredNorm();
  if (std::abs(lorentz_square(m)) > tol * scale) throw InputError("sphere_from_curvature_normal: m is not lightlike");
  if (std::abs(lorentz(m, n)) > tol * std::sqrt(scale) * n.norm())
    throw InputError("sphere_from_curvature_normal: n is not orthogonal to m");
  if (std::abs(lorentz_square(n) - 1.0) > tol) throw InputError("sphere_from_curvature_normal: n is not a unit vector");
  return k * m + n;
}

/// Lift of a unit normal n attached at the point p: ((p.n)/2, (p.n)/2, n).
Vec5 lift_normal(const Vec3& p, const Vec3& n);

/// The de Sitter point of an oriented sphere or plane.
Vec5 sphere_to_desitter(const EuclideanSphere& s);

/// Inverse of sphere_to_desitter (planes when the n1 component vanishes).
EuclideanSphere desitter_to_sphere(const Vec5& sigma, double tol = 1e-12);

struct LorentzSeparation {
  enum class Kind { intersecting, tangent, disjoint };
  Kind kind = Kind::intersecting;
  double value = 0.0;
};

const char* to_string(LorentzSeparation::Kind k);

/// Classifies c = <s1, s2>: |c| < 1 intersecting (angle acos c), |c| = 1 tangent
/// (distance 0, or angle 0 / pi when s1 = ±s2), |c| > 1 disjoint (acosh |c|).
template <typename D1, typename D2>
LorentzSeparation lorentz_separation(const Eigen::MatrixBase<D1>& s1, const Eigen::MatrixBase<D2>& s2,
                                     double tol = 1e-9) {
  const double c = lorentz(s1, s2);
  LorentzSeparation out;
  if (std::abs(c) < 1.0 - tol) {
    out.kind = LorentzSeparation::Kind::intersecting;
    out.value = std::acos(c);
  } else if (std::abs(c) <= 1.0 + tol) {
    if ((s1 - s2).norm() <= 1e-7 * s1.norm()) {
      out.kind = LorentzSeparation::Kind::intersecting;
      out.value = 0.0;
    } else if ((s1 + s2).norm() <= 1e-7 * s1.norm()) {
      out.kind = LorentzSeparation::Kind::intersecting;
      out.value = M_PI;
    } else {
      out.kind = LorentzSeparation::Kind::tangent;
      out.value = 0.0;
    }
  } else {
    out.kind = LorentzSeparation::Kind::disjoint;
    out.value = std::acosh(std::abs(c));
  }
  return out;
}

struct Incidence {
  enum class Kind { empty, transverse, tangent, single, degenerate };
  Kind kind = Kind::empty;
  std::vector<Vec5> directions;  // light-cone directions of the intersection
};

const char* to_string(Incidence::Kind k);

/// Light-cone directions of span(subspace) ∩ sigma^⊥. For a 3-space (a circle)
/// the generic answer is 0 or 2 directions; tangency yields one double direction
/// flagged `tangent`. A 2-space (point pair) gives `single` when one of its two
/// points lies on the sphere, `degenerate` when both do.
Incidence incidence_intersection(const Vec5& sigma, const Eigen::Matrix<double, 5, Eigen::Dynamic>& subspace,
                                 double tol = 1e-9);

/// Unit vector of the 3-space W orthogonal to two light-cone vectors of W:
/// the de Sitter point of the point pair {x, y} inside the circle W.
Vec5 point_pair_in_circle(const Vec5& x, const Vec5& y, const Eigen::Matrix<double, 5, 3>& W);

}  // namespace confarc
