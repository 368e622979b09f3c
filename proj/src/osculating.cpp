#include "confarc/osculating.hpp"

#include <cmath>

#include "confarc/errors.hpp"

namespace confarc {

OsculatingSample osculating_circle(const Curve& c, double t) {
  const Jet tj = c.jet(t);
  const Jet sj = arclength_jet(tj);
  const LiftJet M = lift_jet(sj);
  OsculatingSample o;
  o.t = t;
  o.speed = tj[1].norm();
  o.speed_dot = tj[1].dot(tj[2]) / o.speed;
  o.gamma = wedge3(M[0], M[1], M[2]);
  o.gamma_s = wedge3(M[0], M[1], M[3]);
  o.gamma_ss = wedge3(M[0], M[1], M[4]) + wedge3(M[0], M[2], M[3]);
  o.gamma_t = o.speed * o.gamma_s;
  o.gamma_tt = o.speed * o.speed * o.gamma_ss + o.speed_dot * o.gamma_s;
  return o;
}

TriVector circle_through(const Vec3& x, const Vec3& y, const Vec3& z) {
  const double scale = std::max({1.0, x.norm(), y.norm(), z.norm()});
  const double eps = 1e-12 * scale;
  if ((x - y).norm() <= eps || (y - z).norm() <= eps || (x - z).norm() <= eps) {
    throw InputError("circle_through: coincident points");
  }
  return tri_normalize(wedge3(lift_euclidean(x), lift_euclidean(y), lift_euclidean(z)));
}

namespace {

Vec5 point_at_infinity() {
  Vec5 n1;
  n1 << 1, 1, 0, 0, 0;
  return n1;
}

// Columns f0 (timelike), f1, f2 of a Lorentz-orthonormal frame of the 3-space of P.
Eigen::Matrix<double, 5, 3> circle_frame(const TriVector& P, double tol) {
  const Eigen::Matrix<double, 5, 3> B = tri_factor(P, tol);
  const LorentzFrame fr = lorentz_orthonormalize(B);
  if (fr.basis.cols() != 3) throw NumericalError("circle frame: 3-space is degenerate");
  Eigen::Matrix<double, 5, 3> out;
  int next = 1;
  bool have_time = false;
  for (int j = 0; j < 3; ++j) {
    if (fr.signs[j] < 0 && !have_time) {
      out.col(0) = fr.basis.col(j);
      have_time = true;
    } else {
      if (next > 2) throw NumericalError("circle frame: 3-space is not timelike");
      out.col(next++) = fr.basis.col(j);
    }
  }
  if (!have_time) throw NumericalError("circle frame: 3-space is not timelike");
  return out;
}

Vec3 circumcenter(const Vec3& x, const Vec3& y, const Vec3& z) {
  const Vec3 a = x - z, b = y - z;
  const Vec3 axb = a.cross(b);
  return z + (a.squaredNorm() * b - b.squaredNorm() * a).cross(axb) / (2 * axb.squaredNorm());
}

}  // namespace

CircleGeometry circle_geometry(const TriVector& P, double tol) {
  if (!(tri_square(P) > 0)) throw InputError("circle_geometry: not a timelike 3-space");
  const Eigen::Matrix<double, 5, 3> F = circle_frame(P, tol);
  const Vec5 n1 = point_at_infinity();
  // n1 lies in the 3-space exactly when the circle passes through infinity.
  const Eigen::Vector3d c = F.colPivHouseholderQr().solve(n1);
  const bool is_line = (F * c - n1).norm() <= 1e-8 * n1.norm();

  std::vector<Vec5> nulls;
  for (int k = 0; k < 6; ++k) {
    const double phi = 2 * M_PI * k / 6.0 + 0.1;
    nulls.push_back(F.col(0) + std::cos(phi) * F.col(1) + std::sin(phi) * F.col(2));
  }
  auto finiteness = [](const Vec5& v) { return std::abs(v(0) - v(1)) / v.norm(); };

  CircleGeometry g;
  g.is_line = is_line;
  if (is_line) {
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < nulls.size(); ++i)
      if (finiteness(nulls[i]) > finiteness(nulls[i0])) i0 = i;
    std::size_t i1 = (i0 + 3) % nulls.size();
    const Vec3 a = *project_euclidean(nulls[i0], 1e-8);
    const Vec3 b = *project_euclidean(nulls[i1], 1e-8);
    const double orient = tri_inner(P, wedge3(lift_euclidean(a), lift_euclidean(b), n1));
    Vec3 d = (b - a).normalized();
    if (orient < 0) d = -d;
    g.direction = d;
    g.point = a - a.dot(d) * d;
    return g;
  }
  Vec3 x = *project_euclidean(nulls[0], 1e-8);
  Vec3 y = *project_euclidean(nulls[2], 1e-8);
  Vec3 z = *project_euclidean(nulls[4], 1e-8);
  if (tri_inner(P, wedge3(lift_euclidean(x), lift_euclidean(y), lift_euclidean(z))) < 0) std::swap(y, z);
  g.center = circumcenter(x, y, z);
  g.radius = (x - g.center).norm();
  g.normal = (y - x).cross(z - x).normalized();
  return g;
}

std::array<Vec3, 3> circle_points(const CircleGeometry& g) {
  if (g.is_line) return {g.point, g.point + g.direction, g.point + 2 * g.direction};
  Vec3 e1 = g.normal.unitOrthogonal();
  const Vec3 e2 = g.normal.cross(e1);
  std::array<Vec3, 3> out;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2 * M_PI * k / 3.0;
    out[k] = g.center + g.radius * (std::cos(phi) * e1 + std::sin(phi) * e2);
  }
  return out;
}

TriVector tangent_circle_at_first(const Curve& c, double t1, double t2) {
  const LiftJet x = lift_jet(c.jet(t1));
  const Vec5 y = lift_euclidean(c.point(t2));
  return tri_normalize(wedge3(x[0], x[1], y));
}

TriVector tangent_circle_at_second(const Curve& c, double t1, double t2) {
  const Vec5 x = lift_euclidean(c.point(t1));
  const LiftJet y = lift_jet(c.jet(t2));
  return tri_normalize(wedge3(x, y[0], y[1]));
}

Vec3 reconstruct_point(const TriVector& gd, const TriVector& gdd, double tol) {
  const double n = gd.norm();
  if (n <= 1e-9) throw NumericalError("reconstruct: vertex (derivative of the circle family vanishes)");
  if (std::abs(tri_square(gd)) > tol * n * n) throw NumericalError("reconstruct: derivative is not lightlike");
  if (plucker_residuals(gd).cwiseAbs().maxCoeff() > tol * n * n) {
    throw NumericalError("reconstruct: derivative is not decomposable");
  }
  Eigen::Matrix<double, 10, 2> pair;
  const double m = gdd.norm();
  if (m <= 1e-10 * n) {
    throw NumericalError("reconstruct: vertex (circles tangent at a fixed point, rank of derivatives < 2)");
  }
  pair << gd / n, gdd / m;
  Eigen::JacobiSVD<Eigen::Matrix<double, 10, 2>> rank(pair);
  if (rank.singularValues()(1) <= 1e-10) {
    throw NumericalError("reconstruct: vertex (circles tangent at a fixed point, rank of derivatives < 2)");
  }
  const Eigen::Matrix<double, 5, 3> B = tri_factor(gd / n, std::max(tol, 1e-9));
  const Eigen::Matrix3d G = B.transpose() * minkowski_metric<double, 5>() * B;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G);
  const Eigen::Vector3d ev = es.eigenvalues();
  int imin = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(ev(i)) < std::abs(ev(imin))) imin = i;
  if (std::abs(ev(imin)) > tol * ev.cwiseAbs().maxCoeff()) {
    throw NumericalError("reconstruct: 3-space of the derivative is not isotropic");
  }
  const Vec5 y = B * es.eigenvectors().col(imin);
  const auto p = project_euclidean(y, std::max(1e-8, 10 * tol));
  if (!p) throw NumericalError("reconstruct: point at infinity");
  return *p;
}

std::vector<Vec3> reconstruct_curve(const std::vector<OsculatingSample>& samples, double tol) {
  std::vector<Vec3> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(reconstruct_point(s.gamma_t, s.gamma_tt, tol));
  return out;
}

void make_sign_coherent(std::vector<TriVector>& gamma) {
  for (std::size_t i = 1; i < gamma.size(); ++i)
    if (gamma[i].dot(gamma[i - 1]) < 0) gamma[i] = -gamma[i];
}

namespace {

// Weights of the first and second derivative at x of the quadratic through three nodes.
void quadratic_weights(const std::array<double, 3>& t, double x, std::array<double, 3>& w1,
                       std::array<double, 3>& w2) {
  for (int j = 0; j < 3; ++j) {
    const int a = (j + 1) % 3, b = (j + 2) % 3;
    const double den = (t[j] - t[a]) * (t[j] - t[b]);
    w1[j] = ((x - t[a]) + (x - t[b])) / den;
    w2[j] = 2.0 / den;
  }
}

}  // namespace

std::vector<Vec3> reconstruct_curve(const std::vector<double>& t, std::vector<TriVector> gamma, double tol) {
  const std::size_t n = t.size();
  if (n < 3 || gamma.size() != n) throw InputError("reconstruct_curve: need at least 3 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1])) throw InputError("reconstruct_curve: parameters must increase");
  make_sign_coherent(gamma);
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
    const std::array<double, 3> nodes{t[c - 1], t[c], t[c + 1]};
    std::array<double, 3> w1{}, w2{};
    quadratic_weights(nodes, t[i], w1, w2);
    TriVector d1 = TriVector::Zero(), d2 = TriVector::Zero();
    for (int j = 0; j < 3; ++j) {
      d1 += w1[j] * gamma[c - 1 + j];
      d2 += w2[j] * gamma[c - 1 + j];
    }
    out.push_back(reconstruct_point(d1, d2, tol));
  }
  return out;
}

TangentFrame tangent_frame(const TriVector& gamma) {
  TangentFrame fr;
  fr.f = circle_frame(gamma, 1e-9);
  const LorentzFrame comp = lorentz_orthonormalize(lorentz_complement(fr.f));
  if (comp.basis.cols() != 2 || comp.signs[0] < 0 || comp.signs[1] < 0) {
    throw NumericalError("tangent_frame: complement is not a spacelike 2-space");
  }
  fr.g = comp.basis;
  return fr;
}

namespace {

TriVector slot_basis(const TangentFrame& fr, int alpha, int i) {
  Eigen::Matrix<double, 5, 3> X = fr.f;
  X.col(i) = fr.g.col(alpha);
  return wedge3(X);
}

double r31(const Eigen::RowVector3d& a, const Eigen::RowVector3d& b) {
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

}  // namespace

Eigen::Matrix<double, 2, 3> tangent_rows(const TangentFrame& fr, const TriVector& gd) {
  Eigen::Matrix<double, 2, 3> A;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 3; ++i) {
      const TriVector E = slot_basis(fr, a, i);
      A(a, i) = tri_inner(gd, E) / tri_inner(E, E);
    }
  return A;
}

TriVector tangent_from_rows(const TangentFrame& fr, const Eigen::Matrix<double, 2, 3>& rows) {
  TriVector out = TriVector::Zero();
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 3; ++i) out += rows(a, i) * slot_basis(fr, a, i);
  return out;
}

bool burstall_rows_check(const Eigen::Matrix<double, 2, 3>& A, double tol) {
  const double scale = A.squaredNorm();
  if (scale == 0) return true;
  const Eigen::RowVector3d a1 = A.row(0), a2 = A.row(1);
  return std::abs(r31(a1, a1)) <= tol * scale && std::abs(r31(a2, a2)) <= tol * scale &&
         std::abs(r31(a1, a2)) <= tol * scale;
}

bool burstall_check(const TriVector& gamma, const TriVector& gd, double tol) {
  if (gd.squaredNorm() == 0) return true;
  return burstall_rows_check(tangent_rows(tangent_frame(gamma), gd), tol);
}

bool lightlike_decomposable_check(const TriVector& gd, double tol) {
  const double scale = gd.squaredNorm();
  if (scale == 0) return true;
  return std::abs(tri_square(gd)) <= tol * scale && plucker_residuals(gd).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

std::array<Vec4d, 2> lift2_jet(const Jet& j) {
  const Eigen::Vector2d x = j[0].head<2>(), x1 = j[1].head<2>();
  const double q = x.squaredNorm(), q1 = 2 * x.dot(x1);
  Vec4d m, m1;
  m << 1 + q / 4, -1 + q / 4, x(0), x(1);
  m1 << q1 / 4, q1 / 4, x1(0), x1(1);
  return {m, m1};
}

}  // namespace

Osculating2D osculating_circle_2d(const Curve& planar, double t) {
  const Jet j = planar.jet(t);
  const PlanarCurvature pc = planar_curvature(j);
  const Eigen::Vector2d x = j[0].head<2>();
  const Eigen::Vector2d n = Eigen::Vector2d(-j[1](1), j[1](0)) / pc.speed;
  const auto m = lift2_jet(j);
  Vec4d nbar;
  const double h = x.dot(n) / 2;
  nbar << h, h, n(0), n(1);
  Osculating2D o;
  o.k = pc.k;
  o.k_dot = pc.k_dot;
  o.m = m[0];
  o.gamma = pc.k * m[0] + nbar;
  o.gamma_t = pc.k_dot * m[0];
  o.gamma_tt = pc.k_ddot * m[0] + pc.k_dot * m[1];
  return o;
}

Vec5 osculating_sphere(const Curve& c, double t) {
  const LiftJet M = lift_jet(arclength_jet(c.jet(t)));
  Eigen::Matrix<double, 4, 5> R;
  const Mat5 J = minkowski_metric<double, 5>();
  for (int i = 0; i < 4; ++i) R.row(i) = M[i].transpose() * J;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 5>> svd(R, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (sv(3) <= 1e-10 * sv(0)) throw NumericalError("osculating_sphere: vertex (third-order frame is degenerate)");
  Vec5 sigma = svd.matrixV().col(4);
  const double L = lorentz_square(sigma);
  if (!(L > 0)) throw NumericalError("osculating_sphere: normal direction is not spacelike (vertex)");
  sigma /= std::sqrt(L);
  Mat5 full;
  full << M[0], M[1], M[2], M[3], sigma;
  if (full.determinant() < 0) sigma = -sigma;
  return sigma;
}

}  // namespace confarc
