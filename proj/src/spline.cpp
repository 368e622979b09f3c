#include "confarc/spline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>

#include "confarc/errors.hpp"

namespace confarc {

Eigen::MatrixXd bspline_basis_derivatives(const std::vector<double>& U, int p, int span, double u, int n) {
  // Piegl & Tiller, The NURBS Book, algorithm A2.3.
  Eigen::MatrixXd ndu(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - U[span + 1 - j];
    right[j] = U[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }
  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(n + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);
  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= std::min(n, p); ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double fac = p;
  for (int k = 1; k <= std::min(n, p); ++k) {
    ders.row(k) *= fac;
    fac *= (p - k);
  }
  return ders;
}

BSpline3::BSpline3(int degree, std::vector<double> knots, Eigen::Matrix<double, Eigen::Dynamic, 3> coeffs)
    : degree_(degree), knots_(std::move(knots)), coeffs_(std::move(coeffs)) {
  if (static_cast<Eigen::Index>(knots_.size()) != coeffs_.rows() + degree_ + 1) {
    throw InputError("BSpline3: knot count must be coefficient count + degree + 1");
  }
}

int BSpline3::find_span(double t) const {
  const int n = static_cast<int>(coeffs_.rows()) - 1;
  if (t >= knots_[n + 1]) return n;
  if (t <= knots_[degree_]) return degree_;
  const auto it = std::upper_bound(knots_.begin() + degree_, knots_.begin() + n + 2, t);
  return static_cast<int>(it - knots_.begin()) - 1;
}

Jet BSpline3::evaluate(double t) const {
  const int span = find_span(t);
  const Eigen::MatrixXd d = bspline_basis_derivatives(knots_, degree_, span, t, 4);
  Jet out;
  for (int k = 0; k < 5; ++k) {
    Vec3 acc = Vec3::Zero();
    for (int j = 0; j <= degree_; ++j) acc += d(k, j) * coeffs_.row(span - degree_ + j).transpose();
    out[k] = acc;
  }
  return out;
}

BSpline3 BSpline3::fit(const std::vector<double>& params, const Eigen::Matrix<double, Eigen::Dynamic, 3>& points,
                       int n_coeffs, int degree, double lambda) {
  const int m = static_cast<int>(params.size());
  if (m != points.rows() || m < degree + 1) throw InputError("BSpline3::fit: not enough points");
  if (n_coeffs < degree + 1) throw InputError("BSpline3::fit: too few coefficients");
  const double lo = params.front(), hi = params.back();
  std::vector<double> knots;
  for (int i = 0; i <= degree; ++i) knots.push_back(lo);
  const int interior = n_coeffs - degree - 1;
  for (int i = 1; i <= interior; ++i) knots.push_back(lo + (hi - lo) * i / (interior + 1));
  for (int i = 0; i <= degree; ++i) knots.push_back(hi);

  BSpline3 shell(degree, knots, Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(n_coeffs, 3));
  std::vector<Eigen::Triplet<double>> trip;
  for (int r = 0; r < m; ++r) {
    const int span = shell.find_span(params[r]);
    const Eigen::MatrixXd d = bspline_basis_derivatives(knots, degree, span, params[r], 0);
    for (int j = 0; j <= degree; ++j) trip.emplace_back(r, span - degree + j, d(0, j));
  }
  Eigen::SparseMatrix<double> B(m, n_coeffs);
  B.setFromTriplets(trip.begin(), trip.end());
  trip.clear();
  // Third-order difference penalty on the coefficients.
  for (int r = 0; r + 3 < n_coeffs; ++r) {
    trip.emplace_back(r, r, -1.0);
    trip.emplace_back(r, r + 1, 3.0);
    trip.emplace_back(r, r + 2, -3.0);
    trip.emplace_back(r, r + 3, 1.0);
  }
  Eigen::SparseMatrix<double> D(std::max(n_coeffs - 3, 0), n_coeffs);
  D.setFromTriplets(trip.begin(), trip.end());
  const Eigen::SparseMatrix<double> N = Eigen::SparseMatrix<double>(B.transpose() * B) +
                                        lambda * Eigen::SparseMatrix<double>(D.transpose() * D);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(N);
  if (solver.info() != Eigen::Success) throw NumericalError("BSpline3::fit: normal equations are singular");
  const Eigen::MatrixXd rhs = B.transpose() * points;
  Eigen::Matrix<double, Eigen::Dynamic, 3> coeffs = solver.solve(rhs);
  if (solver.info() != Eigen::Success || !coeffs.allFinite()) throw NumericalError("BSpline3::fit: solve failed");
  return BSpline3(degree, knots, coeffs);
}

SampledCurve::SampledCurve(const std::vector<Vec3>& input, bool closed, double smoothing)
    : Curve(Interval{0.0, 1.0}), closed_(closed) {
  std::vector<Vec3> pts = input;
  if (closed && pts.size() > 1 && (pts.front() - pts.back()).norm() == 0) pts.pop_back();
  if (pts.size() < 8) throw InputError("samples: need at least 8 points");
  for (const auto& p : pts)
    if (!p.allFinite()) throw InputError("samples: non-finite coordinate");
  const std::size_t n = pts.size();
  params_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double d = (pts[i] - pts[i - 1]).norm();
    if (!(d > 0)) throw InputError("samples: consecutive points coincide");
    params_[i] = params_[i - 1] + d;
  }
  double end = params_.back();
  if (closed) {
    const double d = (pts.front() - pts.back()).norm();
    if (!(d > 0)) throw InputError("samples: consecutive points coincide");
    end += d;
  }

  // Closed curves are fitted on a wrapped copy so the ends see their neighbours.
  std::vector<double> fit_t;
  std::vector<Vec3> fit_p;
  const std::size_t pad = closed ? std::min<std::size_t>(12, n - 1) : 0;
  for (std::size_t k = pad; k > 0; --k) {
    fit_t.push_back(params_[n - k] - end);
    fit_p.push_back(pts[n - k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    fit_t.push_back(params_[i]);
    fit_p.push_back(pts[i]);
  }
  for (std::size_t k = 0; k < pad + (closed ? 1 : 0); ++k) {
    fit_t.push_back(params_[k % n] + end);
    fit_p.push_back(pts[k % n]);
  }
  Eigen::Matrix<double, Eigen::Dynamic, 3> P(fit_p.size(), 3);
  for (std::size_t i = 0; i < fit_p.size(); ++i) P.row(static_cast<Eigen::Index>(i)) = fit_p[i].transpose();
  const int n_coeffs = static_cast<int>(fit_p.size());
  spline_ = BSpline3::fit(fit_t, P, n_coeffs, 5, smoothing);
  set_domain(Interval{0.0, closed ? end : params_.back()});
}

Jet SampledCurve::jet(double t) const { return spline_.evaluate(t); }

}  // namespace confarc
