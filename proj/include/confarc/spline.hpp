#pragma once

// Sampled curves: a penalized least-squares B-spline of degree 5 through an
// ordered point list, parametrized by cumulative chord length.

#include <vector>

#include <Eigen/Dense>

#include "confarc/curve.hpp"

namespace confarc {

/// Clamped B-spline curve in R^3.
class BSpline3 {
 public:
  BSpline3() = default;
  BSpline3(int degree, std::vector<double> knots, Eigen::Matrix<double, Eigen::Dynamic, 3> coeffs);

  /// Value and derivatives up to order 4 (zero beyond the degree).
  Jet evaluate(double t) const;
  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Penalized least squares: min |B c - y|^2 + lambda |D_3 c|^2, uniform clamped knots.
  static BSpline3 fit(const std::vector<double>& params, const Eigen::Matrix<double, Eigen::Dynamic, 3>& points,
                      int n_coeffs, int degree, double lambda);

 private:
  int find_span(double t) const;
  int degree_ = 5;
  std::vector<double> knots_;
  Eigen::Matrix<double, Eigen::Dynamic, 3> coeffs_;
};

/// Values and derivatives (rows 0..n) of the degree+1 non-zero basis functions at t.
Eigen::MatrixXd bspline_basis_derivatives(const std::vector<double>& knots, int degree, int span, double t, int n);

class SampledCurve final : public Curve {
 public:
  /// points: at least 8 distinct consecutive points. smoothing: penalty weight.
  SampledCurve(const std::vector<Vec3>& points, bool closed, double smoothing = 1e-9);
  Jet jet(double t) const override;
  std::string kind() const override { return "samples"; }
  bool closed() const { return closed_; }
  /// Parameter value attached to input point i.
  double param(std::size_t i) const { return params_.at(i); }

 private:
  BSpline3 spline_;
  std::vector<double> params_;
  bool closed_;
};

}  // namespace confarc
