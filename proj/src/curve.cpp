#include "confarc/curve.hpp"

#include <cmath>


#include "confarc/errors.hpp"
#include "quadrature.hpp"

namespace confarc {

namespace {

void check_interval(Interval d) {
  if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.hi > d.lo)) {
    throw InputError("curve: domain must be a finite interval with lo < hi");
  }
}

// d^k/dt^k cos t = cos(t + kπ/2), and likewise for sin.
double cos_deriv(double t, int k) {
  switch (k % 4) {
    case 0: return std::cos(t);
    case 1: return -std::sin(t);
    case 2: return -std::cos(t);
    default: return std::sin(t);
  }
}
double sin_deriv(double t, int k) {
  switch (k % 4) {
    case 0: return std::sin(t);
    case 1: return std::cos(t);
    case 2: return -std::sin(t);
    default: return -std::cos(t);
  }
}

}  // namespace

void Curve::set_domain(Interval d) {
  check_interval(d);
  domain_ = d;
}

Helix::Helix(double a, double b, Interval d) : Curve(d), a_(a), b_(b) {
  check_interval(d);
  if (!(a > 0) || !std::isfinite(b)) throw InputError("helix: need a > 0 and finite b");
}

Jet Helix::jet(double t) const {
  Jet j;
  for (int k = 0; k < 5; ++k) {
    j[k] = Vec3(a_ * cos_deriv(t, k), a_ * sin_deriv(t, k), k == 0 ? b_ * t : (k == 1 ? b_ : 0.0));
  }
  return j;
}

CircleCurve::CircleCurve(double r, Interval d) : Curve(d), r_(r) {
  check_interval(d);
  if (!(r > 0)) throw InputError("circle: radius must be positive");
}

Jet CircleCurve::jet(double t) const {
  Jet j;
  for (int k = 0; k < 5; ++k) j[k] = Vec3(r_ * cos_deriv(t, k), r_ * sin_deriv(t, k), 0.0);
  return j;
}

Ellipse::Ellipse(double a, double b, Interval d) : Curve(d), a_(a), b_(b) {
  check_interval(d);
  if (!(a > 0) || !(b > 0)) throw InputError("ellipse: semi-axes must be positive");
}

Jet Ellipse::jet(double t) const {
  Jet j;
  for (int k = 0; k < 5; ++k) j[k] = Vec3(a_ * cos_deriv(t, k), b_ * sin_deriv(t, k), 0.0);
  return j;
}

TwistedCubic::TwistedCubic(Interval d) : Curve(d) { check_interval(d); }

Jet TwistedCubic::jet(double t) const {
  return {Vec3(t, t * t, t * t * t), Vec3(1, 2 * t, 3 * t * t), Vec3(0, 2, 6 * t), Vec3(0, 0, 6),
          Vec3::Zero()};
}

PolynomialCurve::PolynomialCurve(std::array<std::vector<double>, 3> coeffs, Interval d)
    : Curve(d), coeffs_(std::move(coeffs)) {
  check_interval(d);
}

Jet PolynomialCurve::jet(double t) const {
  Jet j;
  for (auto& v : j) v.setZero();
  for (int i = 0; i < 3; ++i) {
    const auto& c = coeffs_[i];
    // Horner on each derivative: d^k/dt^k sum c_n t^n.
    for (int k = 0; k < 5; ++k) {
      double acc = 0;
      for (int n = static_cast<int>(c.size()) - 1; n >= k; --n) {
        double falling = 1;
        for (int q = 0; q < k; ++q) falling *= (n - q);
        acc = acc * t + c[n] * falling;
      }
      j[k](i) = acc;
    }
  }
  return j;
}

MoebiusImage::MoebiusImage(MoebiusMap A, CurvePtr base)
    : Curve(base ? base->domain() : Interval{}), A_(std::move(A)), base_(std::move(base)) {
  if (!base_) throw InputError("moebius_image: missing base curve");
}

Jet MoebiusImage::jet(double t) const {
  const LiftJet L = lift_jet(base_->jet(t));
  std::array<double, 5> d{};
  std::array<Vec3, 5> N;
  for (int k = 0; k < 5; ++k) {
    const Vec5 V = A_.matrix() * L[k];
    d[k] = V(0) - V(1);
    N[k] = 2.0 * V.tail<3>();
  }
  if (std::abs(d[0]) <= 1e-12 * (1.0 + N[0].norm())) {
    throw NumericalError("moebius_image: curve passes through the point at infinity");
  }
  // x d = N, differentiated with Leibniz' rule.
  static constexpr int binom[5][5] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}};
  Jet x;
  for (int k = 0; k < 5; ++k) {
    Vec3 acc = N[k];
    for (int i = 1; i <= k; ++i) acc -= binom[k][i] * d[i] * x[k - i];
    x[k] = acc / d[0];
  }
  return x;
}

LiftJet lift_jet(const Jet& m) {
  std::array<double, 5> q{};
  q[0] = m[0].dot(m[0]);
  q[1] = 2 * m[0].dot(m[1]);
  q[2] = 2 * (m[1].dot(m[1]) + m[0].dot(m[2]));
  q[3] = 2 * (3 * m[1].dot(m[2]) + m[0].dot(m[3]));
  q[4] = 2 * (3 * m[2].dot(m[2]) + 4 * m[1].dot(m[3]) + m[0].dot(m[4]));
  LiftJet L;
  for (int k = 0; k < 5; ++k) {
    const double c = q[k] / 4.0;
    L[k] << c + (k == 0 ? 1.0 : 0.0), c - (k == 0 ? 1.0 : 0.0), m[k](0), m[k](1), m[k](2);
  }
  return L;
}

Jet arclength_jet(const Jet& tj) {
  const Vec3 &r1 = tj[1], &r2 = tj[2], &r3 = tj[3], &r4 = tj[4];
  const double S = r1.dot(r1);
  if (!(S > 0)) throw NumericalError("arclength_jet: zero speed");
  const double S1 = 2 * r1.dot(r2);
  const double S2 = 2 * (r2.dot(r2) + r1.dot(r3));
  const double S3 = 2 * (3 * r2.dot(r3) + r1.dot(r4));
  const double v = std::sqrt(S);
  const double v1 = S1 / (2 * v);
  const double v2 = (S2 / 2 - v1 * v1) / v;
  const double v3 = (S3 / 2 - 3 * v1 * v2) / v;
  // Derivatives of t(s).
  const double u1 = 1 / v;
  const double u2 = -v1 / (v * v * v);
  const double u3 = (-v2 * v + 3 * v1 * v1) / std::pow(v, 5);
  const double u4 = (-v3 / std::pow(v, 4) + 10 * v1 * v2 / std::pow(v, 5) - 15 * v1 * v1 * v1 / std::pow(v, 6)) / v;
  Jet s;
  s[0] = tj[0];
  s[1] = r1 * u1;
  s[2] = r2 * u1 * u1 + r1 * u2;
  s[3] = r3 * u1 * u1 * u1 + 3 * r2 * u1 * u2 + r1 * u3;
  s[4] = r4 * std::pow(u1, 4) + 6 * r3 * u1 * u1 * u2 + r2 * (3 * u2 * u2 + 4 * u1 * u3) + r1 * u4;
  return s;
}

FrenetData frenet(const Jet& j, double kappa_tol) {
  const Vec3 &r1 = j[1], &r2 = j[2], &r3 = j[3], &r4 = j[4];
  const double S = r1.dot(r1);
  if (!(S > 0)) throw NumericalError("frenet: zero speed");
  const Vec3 c = r1.cross(r2);
  const Vec3 c1 = r1.cross(r3);
  const Vec3 c2 = r2.cross(r3) + r1.cross(r4);
  const double A = c.dot(c);
  const double A1 = 2 * c.dot(c1);
  const double A2 = 2 * (c1.dot(c1) + c.dot(c2));
  const double S1 = 2 * r1.dot(r2);
  const double S2 = 2 * (r2.dot(r2) + r1.dot(r3));
  const double D = c.dot(r3);
  const double D1 = c.dot(r4);

  FrenetData f;
  f.speed = std::sqrt(S);
  f.speed_dot = S1 / (2 * f.speed);
  const double S32 = S * f.speed;
  f.kappa = std::sqrt(A) / S32;
  if (A > 0) {
    const double g = 0.5 * A1 / A - 1.5 * S1 / S;
    const double g1 = 0.5 * (A2 / A - A1 * A1 / (A * A)) - 1.5 * (S2 / S - S1 * S1 / (S * S));
    const double kdot = f.kappa * g;
    const double kddot = f.kappa * (g1 + g * g);
    f.kappa_s = kdot / f.speed;
    f.kappa_ss = (kddot - f.kappa_s * f.speed_dot) / S;
    f.kappa_tau = D / (std::sqrt(A) * S32);
  }
  if (f.kappa < kappa_tol || A == 0) {
    f.torsion_defined = false;
    f.tau = f.tau_s = std::numeric_limits<double>::quiet_NaN();
  } else {
    f.tau = D / A;
    f.tau_s = (D1 / A - D * A1 / (A * A)) / f.speed;
  }
  return f;
}

FrenetData frenet(const Curve& c, double t, double kappa_tol) { return frenet(c.jet(t), kappa_tol); }

PlanarCurvature planar_curvature(const Jet& j) {
  const double x1 = j[1](0), y1 = j[1](1), x2 = j[2](0), y2 = j[2](1);
  const double x3 = j[3](0), y3 = j[3](1), x4 = j[4](0), y4 = j[4](1);
  const double S = x1 * x1 + y1 * y1;
  if (!(S > 0)) throw NumericalError("planar_curvature: zero speed");
  const double S1 = 2 * (x1 * x2 + y1 * y2);
  const double S2 = 2 * (x2 * x2 + y2 * y2 + x1 * x3 + y1 * y3);
  const double C = x1 * y2 - y1 * x2;
  const double C1 = x1 * y3 - y1 * x3;
  const double C2 = x2 * y3 + x1 * y4 - y2 * x3 - y1 * x4;
  const double p32 = std::pow(S, -1.5), p52 = std::pow(S, -2.5), p72 = std::pow(S, -3.5);
  PlanarCurvature out;
  out.speed = std::sqrt(S);
  out.k = C * p32;
  out.k_dot = C1 * p32 - 1.5 * C * S1 * p52;
  out.k_ddot = C2 * p32 - 3 * C1 * S1 * p52 - 1.5 * C * S2 * p52 + 3.75 * C * S1 * S1 * p72;
  return out;
}

double vertex_quantity(const FrenetData& f) { return f.kappa_s * f.kappa_s + f.kappa_tau * f.kappa_tau; }

double conformal_arclength_element(const Curve& c, double t) {
  const FrenetData f = frenet(c, t);
  return std::sqrt(std::sqrt(vertex_quantity(f))) * f.speed;
}

double conformal_arclength(const Curve& c, double a, double b, double tol) {
  if (!(tol > 0)) throw InputError("conformal_arclength: tol must be positive");
  auto f = [&c](double t) { return conformal_arclength_element(c, t); };
  return detail::integrate_split(f, a, b, tol, "conformal_arclength").value;
}

std::vector<double> conformal_arclength_profile(const Curve& c, const std::vector<double>& grid, double tol) {
  std::vector<double> out;
  out.reserve(grid.size());
  double acc = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) {
      if (!(grid[i] > grid[i - 1])) throw InputError("conformal_arclength_profile: grid must increase");
      acc += conformal_arclength(c, grid[i - 1], grid[i], tol);
    }
    out.push_back(acc);
  }
  return out;
}

bool is_vertex(const Curve& c, double t, double tol) { return vertex_quantity(frenet(c, t)) < tol * tol; }

double vertex_tolerance(const Curve& c, double a, double b, int samples) {
  double qmax = 0, kmax = 0;
  for (int i = 0; i <= samples; ++i) {
    const double t = a + (b - a) * i / samples;
    const FrenetData f = frenet(c, t);
    qmax = std::max(qmax, std::sqrt(vertex_quantity(f)));
    kmax = std::max(kmax, f.kappa);
  }
  return std::max({1e-6 * qmax, 1e-8 * kmax * kmax, 1e-300});
}

double conformal_torsion(const Curve& c, double t, double vertex_tol) {
  const FrenetData f = frenet(c, t);
  if (!f.torsion_defined) throw NumericalError("conformal_torsion: torsion undefined (zero curvature)");
  const double q = vertex_quantity(f);
  if (q <= vertex_tol * vertex_tol) throw NumericalError("conformal_torsion: undefined at a vertex");
  const double k = f.kappa, k1 = f.kappa_s, k2 = f.kappa_ss, tau = f.tau, tau1 = f.tau_s;
  const double num = 2 * k1 * k1 * tau + k * k * tau * tau * tau + k * k1 * tau1 - k * k2 * tau;
  return num / std::pow(q, 1.25);
}

double omega_form(const Curve& c, double t) {
  const Jet tj = c.jet(t);
  const Jet s = arclength_jet(tj);
  const double F2 = s[2].dot(s[2]);
  const double F3 = s[3].dot(s[3]);
  double rad = F3 - F2 * F2;
  if (rad < 0) {
    if (rad < -1e-10 * std::max(1.0, F3)) throw NumericalError("omega_form: negative radicand");
    rad = 0;
  }
  return std::sqrt(std::sqrt(rad)) * tj[1].norm();
}

}  // namespace confarc
