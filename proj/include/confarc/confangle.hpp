#pragma once

// Conformal angle between the two tangent circles through a pair of curve
// points, arc-length recovered from it, cross ratios of concyclic and
// cospherical points, and the infinitesimal cross-ratio experiment.

#include <array>
#include <complex>

#include "confarc/curve.hpp"
#include "confarc/osculating.hpp"

namespace confarc {

using Complex = std::complex<double>;

/// standard: cross(a, b; c, d) = (a-b)/(a-d) : (c-b)/(c-d).
/// swapped:  cross(a, b; c, d) = (a-b)/(a-d) : (c-d)/(c-b).
enum class CrossPattern { standard, swapped };

Complex cross_ratio(const std::array<Complex, 4>& z, CrossPattern pattern);

struct ConcyclicQuad {
  std::array<Vec3, 4> points;
  CircleGeometry circle;
};

/// Validates concyclicity (within 1e-9 of the radius) and attaches the circle.
ConcyclicQuad make_concyclic_quad(const std::array<Vec3, 4>& points, double tol = 1e-9);

/// Cross ratio in complex coordinates of the circle's plane.
Complex cross_ratio(const ConcyclicQuad& q, CrossPattern pattern);

/// Cross ratio of four points on a sphere, through a stereographic projection of
/// that sphere. Defined up to complex conjugation (orientation of the sphere).
Complex cross_ratio_on_sphere(const std::array<Vec3, 4>& points, const Vec3& center, double radius,
                              CrossPattern pattern);

/// Angle in [0, π] between Γ(x, x, y) and Γ(x, y, y), x = m(t1), y = m(t2).
double conformal_angle(const Curve& c, double t1, double t2);

/// The same angle measured between Euclidean tangent directions at x.
double conformal_angle_euclidean(const Curve& c, double t1, double t2);

/// sqrt(6 θ(t, t+h)) / Δs with Δs the arc length from t to t+h.
double arclength_via_angle(const Curve& c, double t, double h);

struct CrossRatioRecord {
  Complex cross;
  double rho_ratio = 0;
  double delta_rho = 0;
  Vec3 y_t = Vec3::Zero();
  Vec3 y_th = Vec3::Zero();
};

/// S: the sphere orthogonal to the curve at m(t) through m(t+h). y(t), y(t+h):
/// the second intersections of S with the osculating circles at t and t+h.
/// cross = cross(m(t), y(t+h); m(t+h), y(t)) (standard pattern),
/// rho_ratio = sqrt(6) |cross|^{1/4} / (ρ(t+h) - ρ(t)).
CrossRatioRecord infinitesimal_cross_ratio_experiment(const Curve& c, double t, double h);

}  // namespace confarc
