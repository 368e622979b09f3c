#pragma once

// Circles as points of the circle space, the lightlike curve of osculating
// circles of a space curve, its inverse (curve reconstruction), the tangent
// condition on the circle space, the planar analogue in R^4_1, and osculating
// spheres.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "confarc/curve.hpp"
#include "confarc/grassmann.hpp"

namespace confarc {

using Vec4d = Eigen::Vector4d;

/// Osculating circle and its derivatives in arc-length s and in the curve parameter t.
struct OsculatingSample {
  double t = 0;
  double speed = 0;
  double speed_dot = 0;
  TriVector gamma;
  TriVector gamma_s;
  TriVector gamma_ss;
  TriVector gamma_t;
  TriVector gamma_tt;
};

OsculatingSample osculating_circle(const Curve& c, double t);

/// Oriented circle (or line) through three distinct points, in the cyclic order x, y, z.
TriVector circle_through(const Vec3& x, const Vec3& y, const Vec3& z);

/// Euclidean rendering of a circle point. For lines, `point` and `direction`
/// are set and the circle fields are unused.
struct CircleGeometry {
  bool is_line = false;
  Vec3 center = Vec3::Zero();
  double radius = 0;
  Vec3 normal = Vec3::UnitZ();  // right-handed with the orientation
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();
};

CircleGeometry circle_geometry(const TriVector& P, double tol = 1e-9);

/// Three points on the circle (or line) in its orientation order.
std::array<Vec3, 3> circle_points(const CircleGeometry& g);

/// Γ(x, x, y): the circle tangent to the curve at x = m(t1) through y = m(t2).
TriVector tangent_circle_at_first(const Curve& c, double t1, double t2);
/// Γ(x, y, y): the circle through x = m(t1) tangent to the curve at y = m(t2).
TriVector tangent_circle_at_second(const Curve& c, double t1, double t2);

/// Point of the curve recovered from the isotropic 3-space of γ̇. γ̈ is used to
/// reject degenerate families (dim span<γ̇, γ̈> < 2).
Vec3 reconstruct_point(const TriVector& gamma_dot, const TriVector& gamma_ddot, double tol = 1e-6);

/// Reconstruction from exact derivatives carried by the samples.
std::vector<Vec3> reconstruct_curve(const std::vector<OsculatingSample>& samples, double tol = 1e-6);

/// Reconstruction from circle points alone: sign coherence, then second-order
/// finite differences (one-sided at the ends). Needs at least 3 samples.
std::vector<Vec3> reconstruct_curve(const std::vector<double>& t, std::vector<TriVector> gamma,
                                    double tol = 1e-3);

/// Flips signs so that consecutive entries have positive Euclidean inner product.
void make_sign_coherent(std::vector<TriVector>& gamma);

/// 2x3 matrix of a tangent vector at γ in Hom(Π, Π^⊥), with respect to a
/// Lorentz-orthonormal frame (f0 timelike, f1, f2) of Π and (g1, g2) of Π^⊥.
struct TangentFrame {
  Eigen::Matrix<double, 5, 3> f;
  Eigen::Matrix<double, 5, 2> g;
};

TangentFrame tangent_frame(const TriVector& gamma);
Eigen::Matrix<double, 2, 3> tangent_rows(const TangentFrame& fr, const TriVector& gamma_dot);
TriVector tangent_from_rows(const TangentFrame& fr, const Eigen::Matrix<double, 2, 3>& rows);

/// <a1,a1> = <a2,a2> = <a1,a2> = 0 in R^3_1, relative to |A|^2.
bool burstall_rows_check(const Eigen::Matrix<double, 2, 3>& rows, double tol);
bool burstall_check(const TriVector& gamma, const TriVector& gamma_dot, double tol);
/// Direct test: γ̇ lightlike and decomposable, relative to |γ̇|^2.
bool lightlike_decomposable_check(const TriVector& gamma_dot, double tol);

/// Planar curve (its x, y coordinates) in R^4_1: γ = k m̄ + n̄ with the left normal.
struct Osculating2D {
  double k = 0;
  double k_dot = 0;
  Vec4d m;
  Vec4d gamma;
  Vec4d gamma_t;
  Vec4d gamma_tt;
};

Osculating2D osculating_circle_2d(const Curve& planar, double t);

/// Unit spacelike normal of span<m̄, m̄', m̄'', m̄'''>, with det[m̄ .. m̄''' σ] > 0.
Vec5 osculating_sphere(const Curve& c, double t);

}  // namespace confarc
