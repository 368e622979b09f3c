#pragma once

// The L^{1/2}-measure of a lightlike curve: polygonal sums of sqrt‖Δγ‖, the
// length element (|L(γ̈)|/12)^{1/4} dt, and its quadrature. Generic over the
// ambient indefinite inner product, passed as a callable.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "confarc/errors.hpp"

namespace confarc {

/// Parameters t_0 < ... < t_n with values γ(t_i). Values must be sign coherent.
template <typename Vector>
struct LightlikeSamples {
  std::vector<double> params;
  std::vector<Vector> values;
};

/// Σ sqrt(sqrt|L(γ_{i+1} - γ_i)|), L(v) = inner(v, v).
/// L(Δγ) is O(h^4) and formed from O(1) coordinates, so in double precision
/// refining beyond roughly 10^4 steps per unit of parameter adds round-off.
template <typename Vector, typename Inner>
double polygonal_half_measure(const LightlikeSamples<Vector>& s, Inner inner) {
  if (s.values.size() < 2 || s.params.size() != s.values.size()) {
    throw InputError("polygonal_half_measure: need at least 2 samples with parameters");
  }
  double acc = 0;
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
    if (!(s.params[i + 1] > s.params[i])) throw InputError("polygonal_half_measure: parameters must increase");
    const Vector d = s.values[i + 1] - s.values[i];
    acc += std::sqrt(std::sqrt(std::abs(inner(d, d))));
  }
  return acc;
}

/// (|L(γ̈)| / 12)^{1/4}.
inline double half_length_element(double l_ddot) { return std::sqrt(std::sqrt(std::abs(l_ddot) / 12.0)); }

/// ∫_a^b (|L(γ̈(t))|/12)^{1/4} dt, where l_ddot(t) returns L(γ̈(t)).
double half_measure_quadrature(const std::function<double(double)>& l_ddot, double a, double b,
                               double tol = 1e-10);

struct ConvergencePoint {
  int n = 0;
  double h = 0;
  double sum = 0;
  double error = 0;
};

/// Polygonal sums on uniform subdivisions of [a, b] against a reference value.
template <typename Vector, typename Curve, typename Inner>
std::vector<ConvergencePoint> convergence_order(const Curve& gamma, Inner inner, double a, double b,
                                                const std::vector<int>& n_list, double reference) {
  std::vector<ConvergencePoint> out;
  int prev = 0;
  for (int n : n_list) {
    if (n <= prev) throw InputError("convergence_order: n_list must increase");
    prev = n;
    LightlikeSamples<Vector> s;
    for (int i = 0; i <= n; ++i) {
      const double t = a + (b - a) * i / n;
      s.params.push_back(t);
      s.values.push_back(gamma(t));
    }
    ConvergencePoint p;
    p.n = n;
    p.h = (b - a) / n;
    p.sum = polygonal_half_measure(s, inner);
    p.error = std::abs(p.sum - reference);
    out.push_back(p);
  }
  return out;
}

/// Least-squares slope of log(error) against log(h) over the last `last` points.
double fitted_order(const std::vector<double>& h, const std::vector<double>& error, int last = 4);

}  // namespace confarc
