#pragma once

// The curve of osculating spheres σ(s̃) in the de Sitter space (s̃ its own
// arc-length), the lightlike families ψ_θ = cos(s̃+θ)σ - sin(s̃+θ)σ̇, and the
// average of their L^{1/2}-measures against the conformal arc-length.

#include <vector>

#include "confarc/curve.hpp"

namespace confarc {

struct SphereSample {
  double t = 0;
  double s_tilde = 0;  // arc-length of the sphere curve from the first grid point
  double ds_dt = 0;    // ds̃/dt
  Vec5 sigma;
  Vec5 d1;  // derivatives with respect to s̃
  Vec5 d2;
  Vec5 d3;
};

struct SphereCurveOptions {
  double fd_step = 1e-2;  // t-step of the stencils for the second and third derivatives
  double tol = 1e-11;     // quadrature tolerance for s̃
};

/// σ and its s̃-derivatives at t. σ and dσ/dt are exact; the second and third
/// t-derivatives use 7-point stencils on dσ/dt; then the chain rule to s̃.
SphereSample sphere_sample(const Curve& c, double t, const SphereCurveOptions& opt = {});

/// Samples over an increasing grid with s̃ accumulated by quadrature of the exact ds̃/dt.
std::vector<SphereSample> sphere_curve(const Curve& c, const std::vector<double>& grid,
                                       const SphereCurveOptions& opt = {});

struct PsiSample {
  double s_tilde = 0;
  Vec5 psi;
  Vec5 d1;
  Vec5 d2;
};

/// ψ_θ along the samples, with derivatives from the closed forms
/// ψ̇ = -sin(u)(σ + σ̈), ψ̈ = -cos(u)(σ + σ̈) - sin(u)(σ̇ + σ⃛), u = s̃ + θ.
std::vector<PsiSample> psi_theta(const std::vector<SphereSample>& sc, double theta);

/// 12^{-1/4} (2π)^{-1} ∫_0^{2π} sqrt|sin u| du, by adaptive quadrature.
double averaging_constant();

struct AverageRecord {
  double average = 0;       // mean over θ of the polygonal L^{1/2}-measures of ψ_θ
  double average_quad = 0;  // same mean from the length element on the grid
  double rho = 0;           // conformal arc-length of [a, b]
  double ratio = 0;         // average / rho
  double expected = 0;      // averaging_constant()
};

/// theta_count >= 16 uniform angles in [0, 2π); segments >= 16 uniform t-intervals.
AverageRecord average_half_measure(const Curve& c, double a, double b, int theta_count, int segments = 2048,
                                   const SphereCurveOptions& opt = {});

}  // namespace confarc
