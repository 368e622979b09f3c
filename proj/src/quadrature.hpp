#pragma once

// Quadrature for nonnegative integrands that may vanish like |t - t0|^p with
// p < 1 (conformal length elements at vertices). Interior zeros are located and
// become piece boundaries, where tanh-sinh handles the endpoint singularity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "confarc/errors.hpp"

namespace confarc::detail {

struct QuadratureResult {
  double value = 0;
  double error = 0;
  double l1 = 0;
};

/// Break points (a, interior zeros..., b) of a nonnegative f on [a, b].
template <typename F>
std::vector<double> zero_breaks(const F& f, double a, double b, int samples = 64) {
  std::vector<double> t(samples + 1), v(samples + 1);
  double vmax = 0;
  for (int i = 0; i <= samples; ++i) {
    t[i] = a + (b - a) * i / samples;
    v[i] = f(t[i]);
    vmax = std::max(vmax, v[i]);
  }
  std::vector<double> breaks{a};
  if (!(vmax > 0)) {
    breaks.push_back(b);
    return breaks;
  }
  const double margin = 1e-12 * (b - a);
  for (int i = 0; i <= samples; ++i) {
    const int l = std::max(i - 1, 0), r = std::min(i + 1, samples);
    if (v[i] > v[l] || v[i] > v[r]) continue;
    const auto m = boost::math::tools::brent_find_minima(f, t[l], t[r], std::numeric_limits<double>::digits);
    if (m.second < 1e-3 * vmax && m.first > breaks.back() + margin && m.first < b - margin) breaks.push_back(m.first);
  }
  breaks.push_back(b);
  return breaks;
}

/// Fourth roots lift round-off in the radicand (1e-24 and below) to about 1e-6;
/// integrands whose whole L1 mass stays under this level per unit parameter are
/// vertex curves, and their noise-level integral is returned without a
/// convergence check.
inline constexpr double kNoiseFloor = 1e-6;

/// ∫_a^b f for nonnegative f, split at interior zeros. Throws NumericalError
/// when a piece misses max(100 tol |f|_1, 1e-13), unless f is noise (above).
template <typename F>
QuadratureResult integrate_split(const F& f, double a, double b, double tol, const char* who) {
  QuadratureResult r;
  if (a == b) return r;
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const std::vector<double> breaks = zero_breaks(f, lo, hi);
  boost::math::quadrature::tanh_sinh<double> ts;
  bool converged = true;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double err = 0, l1 = 0;
    const double I = ts.integrate(f, breaks[i], breaks[i + 1], tol, &err, &l1);
    if (!std::isfinite(I)) throw NumericalError(std::string(who) + ": non-finite integrand");
    converged = converged && err <= std::max(100 * tol * l1, 1e-13);
    r.value += I;
    r.error += err;
    r.l1 += l1;
  }
  if (!converged && r.l1 > kNoiseFloor * (hi - lo)) {
    throw NumericalError(std::string(who) + ": quadrature did not converge");
  }
  r.value *= sign;
  return r;
}

}  // namespace confarc::detail
