#pragma once

// Space curves with derivatives up to order 4, Frenet data, and the conformal
// arc-length element dρ = (κ'^2 + κ^2 τ^2)^{1/4} ds.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "confarc/minkowski.hpp"

namespace confarc {

/// m, m', m'', m''', m'''' with respect to whichever parameter produced them.
using Jet = std::array<Vec3, 5>;
/// Derivatives 0..4 of a lifted curve in R^5_1.
using LiftJet = std::array<Vec5, 5>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

class Curve {
 public:
  virtual ~Curve() = default;
  /// Derivatives with respect to the curve parameter t.
  virtual Jet jet(double t) const = 0;
  virtual std::string kind() const = 0;
  Interval domain() const { return domain_; }
  void set_domain(Interval d);
  Vec3 point(double t) const { return jet(t)[0]; }

 protected:
  explicit Curve(Interval d) : domain_(d) {}

 private:
  Interval domain_;
};

using CurvePtr = std::shared_ptr<const Curve>;

/// (a cos t, a sin t, b t).
class Helix final : public Curve {
 public:
  Helix(double a, double b, Interval d);
  Jet jet(double t) const override;
  std::string kind() const override { return "helix"; }

 private:
  double a_, b_;
};

/// (r cos t, r sin t, 0).
class CircleCurve final : public Curve {
 public:
  CircleCurve(double r, Interval d);
  Jet jet(double t) const override;
  std::string kind() const override { return "circle"; }

 private:
  double r_;
};

/// (a cos t, b sin t, 0).
class Ellipse final : public Curve {
 public:
  Ellipse(double a, double b, Interval d);
  Jet jet(double t) const override;
  std::string kind() const override { return "ellipse"; }

 private:
  double a_, b_;
};

/// (t, t^2, t^3).
class TwistedCubic final : public Curve {
 public:
  explicit TwistedCubic(Interval d);
  Jet jet(double t) const override;
  std::string kind() const override { return "twisted_cubic"; }
};

/// Componentwise polynomial; coeffs[i] holds the monomial coefficients of coordinate i.
class PolynomialCurve final : public Curve {
 public:
  PolynomialCurve(std::array<std::vector<double>, 3> coeffs, Interval d);
  Jet jet(double t) const override;
  std::string kind() const override { return "polynomial"; }

 private:
  std::array<std::vector<double>, 3> coeffs_;
};

/// Image of a curve under a Möbius map, with exact derivatives.
class MoebiusImage final : public Curve {
 public:
  MoebiusImage(MoebiusMap A, CurvePtr base);
  Jet jet(double t) const override;
  std::string kind() const override { return "moebius_image"; }

 private:
  MoebiusMap A_;
  CurvePtr base_;
};

/// Derivatives of the lift (1 + m.m/4, -1 + m.m/4, m) from a jet of m.
LiftJet lift_jet(const Jet& m);

/// Reparametrizes a t-jet by arc-length s (ds = |m'(t)| dt).
Jet arclength_jet(const Jet& tj);

struct FrenetData {
  double speed = 0;
  double speed_dot = 0;  // d|m'|/dt
  double kappa = 0;
  double tau = 0;
  double kappa_tau = 0;  // κτ, finite even where τ is not
  double kappa_s = 0;
  double kappa_ss = 0;
  double tau_s = 0;
  bool torsion_defined = true;
};

/// Curvature, torsion and their arc-length derivatives. Torsion is marked
/// undefined where κ < kappa_tol.
FrenetData frenet(const Jet& j, double kappa_tol = 1e-12);
FrenetData frenet(const Curve& c, double t, double kappa_tol = 1e-12);

/// Signed curvature k of the planar projection (x, y) and dk/dt, d^2k/dt^2.
struct PlanarCurvature {
  double speed = 0;
  double k = 0;
  double k_dot = 0;
  double k_ddot = 0;
};
PlanarCurvature planar_curvature(const Jet& j);

/// κ'^2 + κ^2 τ^2 (arc-length derivatives).
double vertex_quantity(const FrenetData& f);

/// dρ/dt = (κ_s^2 + κ^2 τ^2)^{1/4} |m'(t)|.
double conformal_arclength_element(const Curve& c, double t);

/// ∫_a^b dρ: tanh-sinh quadrature on pieces split at interior vertices.
double conformal_arclength(const Curve& c, double a, double b, double tol = 1e-10);

/// Running ρ(t_i) - ρ(t_0) over an increasing grid.
std::vector<double> conformal_arclength_profile(const Curve& c, const std::vector<double>& grid,
                                                double tol = 1e-10);

/// True where κ_s^2 + κ^2 τ^2 < tol^2.
bool is_vertex(const Curve& c, double t, double tol);

/// Default vertex tolerance for a segment: 1e-6 times the largest
/// sqrt(κ_s^2 + κ^2 τ^2) on a sample grid, floored by a curvature-scaled epsilon.
double vertex_tolerance(const Curve& c, double a, double b, int samples = 200);

/// (2κ'^2 τ + κ^2 τ^3 + κκ'τ' - κκ''τ) / (κ'^2 + κ^2 τ^2)^{5/4}.
double conformal_torsion(const Curve& c, double t, double vertex_tol = 1e-12);

/// (m'''.m''' - (m''.m'')^2)^{1/4} ds/dt from arc-length derivatives of m.
double omega_form(const Curve& c, double t);

}  // namespace confarc
