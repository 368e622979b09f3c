#include "confarc/sphereavg.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "confarc/errors.hpp"
#include "confarc/halfmeasure.hpp"
#include "confarc/osculating.hpp"

namespace confarc {

namespace {

struct TDerivs {
  Vec5 s0, s1, s2, s3;
};

// w with <w, y> = det[a b c d y]. Orthogonal to a..d, and det[a b c d w] = L(w).
Vec5 lorentz_cross(const Vec5& a, const Vec5& b, const Vec5& c, const Vec5& d) {
  Mat5 m;
  m << a, b, c, d, Vec5::Zero();
  Vec5 w;
  for (int k = 0; k < 5; ++k) {
    m.col(4).setZero();
    m(k, 4) = 1;
    w(k) = m.determinant();
  }
  w(0) = -w(0);
  return w;
}

struct Direction {
  Vec5 w, dw;
};

// Unnormalised sphere direction and its exact t-derivative: the t-derivative of
// m0∧m1∧m2∧m3 (lift derivatives in t) is m0∧m1∧m2∧m4.
Direction sphere_direction(const Curve& c, double t) {
  const LiftJet M = lift_jet(c.jet(t));
  return {lorentz_cross(M[0], M[1], M[2], M[3]), lorentz_cross(M[0], M[1], M[2], M[4])};
}

// σ = w / sqrt(L(w)) and its t-derivatives. Higher derivatives of w come from
// 7-point stencils applied to the exact w'.
TDerivs t_derivatives(const Curve& c, double t, double h) {
  std::array<Vec5, 7> f;
  Direction mid;
  for (int k = -3; k <= 3; ++k) {
    const Direction d = sphere_direction(c, t + k * h);
    f[k + 3] = d.dw;
    if (k == 0) mid = d;
  }
  const Vec5& w0 = mid.w;
  const Vec5& w1 = mid.dw;
  const Vec5 w2 = (-f[0] + 9 * f[1] - 45 * f[2] + 45 * f[4] - 9 * f[5] + f[6]) / (60 * h);
  const Vec5 w3 = (2 * f[0] - 27 * f[1] + 270 * f[2] - 490 * f[3] + 270 * f[4] - 27 * f[5] + 2 * f[6]) / (180 * h * h);

  const double q = lorentz_square(w0);
  if (!(q > 0)) throw NumericalError("sphere curve: osculating sphere undefined (vertex)");
  const double q1 = 2 * lorentz(w0, w1);
  const double q2 = 2 * (lorentz_square(w1) + lorentz(w0, w2));
  const double q3 = 2 * (3 * lorentz(w1, w2) + lorentz(w0, w3));
  const double g0 = 1 / std::sqrt(q);
  const double g1 = -0.5 * g0 / q * q1;
  const double g2 = 0.75 * g0 / (q * q) * q1 * q1 - 0.5 * g0 / q * q2;
  const double g3 = -15.0 / 8 * g0 / (q * q * q) * q1 * q1 * q1 + 9.0 / 4 * g0 / (q * q) * q1 * q2 - 0.5 * g0 / q * q3;
  TDerivs d;
  d.s0 = g0 * w0;
  d.s1 = g0 * w1 + g1 * w0;
  d.s2 = g0 * w2 + 2 * g1 * w1 + g2 * w0;
  d.s3 = g0 * w3 + 3 * g1 * w2 + 3 * g2 * w1 + g3 * w0;
  return d;
}

double speed_of(const TDerivs& d) {
  const double L = lorentz_square(d.s1);
  if (!(L > 0)) throw NumericalError("sphere curve: not spacelike (vertex in segment)");
  return std::sqrt(L);
}

// ds̃/dt without finite differences.
double exact_speed(const Curve& c, double t) {
  const Direction d = sphere_direction(c, t);
  const double q = lorentz_square(d.w);
  if (!(q > 0)) throw NumericalError("sphere curve: osculating sphere undefined (vertex)");
  const Vec5 s1 = (d.dw - lorentz(d.w, d.dw) / q * d.w) / std::sqrt(q);
  const double L = lorentz_square(s1);
  if (!(L > 0)) throw NumericalError("sphere curve: not spacelike (vertex in segment)");
  return std::sqrt(L);
}

}  // namespace

SphereSample sphere_sample(const Curve& c, double t, const SphereCurveOptions& opt) {
  if (!(opt.fd_step > 0)) throw InputError("sphere_sample: fd_step must be positive");
  const TDerivs d = t_derivatives(c, t, opt.fd_step);
  const double v = speed_of(d);
  const double v1 = lorentz(d.s1, d.s2) / v;
  const double v2 = (lorentz_square(d.s2) + lorentz(d.s1, d.s3) - v1 * v1) / v;
  SphereSample s;
  s.t = t;
  s.ds_dt = v;
  s.sigma = d.s0;
  s.d1 = d.s1 / v;
  s.d2 = (d.s2 - v1 * s.d1) / (v * v);
  s.d3 = (d.s3 - 3 * v1 * v * s.d2 - v2 * s.d1) / (v * v * v);
  return s;
}

std::vector<SphereSample> sphere_curve(const Curve& c, const std::vector<double>& grid,
                                       const SphereCurveOptions& opt) {
  std::vector<SphereSample> out;
  out.reserve(grid.size());
  auto speed = [&](double t) { return exact_speed(c, t); };
  double acc = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) {
      if (!(grid[i] > grid[i - 1])) throw InputError("sphere_curve: grid must increase");
      double err = 0, l1 = 0;
      acc += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(speed, grid[i - 1], grid[i], 8, opt.tol,
                                                                           &err, &l1);
    }
    SphereSample s = sphere_sample(c, grid[i], opt);
    s.s_tilde = acc;
    out.push_back(s);
  }
  return out;
}

std::vector<PsiSample> psi_theta(const std::vector<SphereSample>& sc, double theta) {
  std::vector<PsiSample> out;
  out.reserve(sc.size());
  for (const auto& s : sc) {
    const double u = s.s_tilde + theta;
    const double cu = std::cos(u), su = std::sin(u);
    PsiSample p;
    p.s_tilde = s.s_tilde;
    p.psi = cu * s.sigma - su * s.d1;
    p.d1 = -su * (s.sigma + s.d2);
    p.d2 = -cu * (s.sigma + s.d2) - su * (s.d1 + s.d3);
    out.push_back(p);
  }
  return out;
}

double averaging_constant() {
  auto f = [](double u) { return std::sqrt(std::abs(std::sin(u))); };
  double err = 0;
  // Split at the zero of sin so each piece has only endpoint singularities.
  const double I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, M_PI, 30, 1e-13, &err);
  return 2 * I / (2 * M_PI) / std::pow(12.0, 0.25);
}

AverageRecord average_half_measure(const Curve& c, double a, double b, int theta_count, int segments,
                                   const SphereCurveOptions& opt) {
  if (theta_count < 16) throw InputError("average_half_measure: theta_count must be at least 16");
  if (segments < 16) throw InputError("average_half_measure: need at least 16 segments");
  if (!(b > a)) throw InputError("average_half_measure: need a < b");
  std::vector<double> grid;
  for (int i = 0; i <= segments; ++i) grid.push_back(a + (b - a) * i / segments);
  const std::vector<SphereSample> sc = sphere_curve(c, grid, opt);

  AverageRecord rec;
  auto inner = [](const Vec5& x, const Vec5& y) { return lorentz(x, y); };
  for (int k = 0; k < theta_count; ++k) {
    const double theta = 2 * M_PI * k / theta_count;
    const std::vector<PsiSample> psi = psi_theta(sc, theta);
    LightlikeSamples<Vec5> ls;
    std::vector<double> element;
    for (const auto& p : psi) {
      ls.params.push_back(p.s_tilde);
      ls.values.push_back(p.psi);
      element.push_back(half_length_element(lorentz_square(p.d2)));
    }
    rec.average += polygonal_half_measure(ls, inner);
    double trap = 0;
    for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
      trap += 0.5 * (element[i] + element[i + 1]) * (psi[i + 1].s_tilde - psi[i].s_tilde);
    }
    rec.average_quad += trap;
  }
  rec.average /= theta_count;
  rec.average_quad /= theta_count;
  rec.rho = conformal_arclength(c, a, b);
  rec.ratio = rec.average / rec.rho;
  rec.expected = averaging_constant();
  return rec;
}

}  // namespace confarc
