#include "confarc/confangle.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "confarc/desitter.hpp"
#include "confarc/errors.hpp"

namespace confarc {

namespace {

// x -> (x - origin) / scale. Conformal quantities are unchanged, and local
// configurations of size ~h become size ~1, which keeps the wedge products and
// sphere intersections well conditioned.
class LocalSimilarity final : public Curve {
 public:
  LocalSimilarity(const Curve& base, const Vec3& origin, double scale)
      : Curve(base.domain()), base_(base), origin_(origin), scale_(scale) {}
  Jet jet(double t) const override {
    Jet j = base_.jet(t);
    j[0] -= origin_;
    for (auto& v : j) v /= scale_;
    return j;
  }
  std::string kind() const override { return "local_similarity"; }

 private:
  const Curve& base_;
  Vec3 origin_;
  double scale_;
};

}  // namespace

Complex cross_ratio(const std::array<Complex, 4>& z, CrossPattern pattern) {
  const Complex &a = z[0], &b = z[1], &c = z[2], &d = z[3];
  const Complex num = pattern == CrossPattern::standard ? (a - b) * (c - d) : (a - b) * (c - b);
  const Complex den = pattern == CrossPattern::standard ? (a - d) * (c - b) : (a - d) * (c - d);
  if (std::abs(den) == 0) throw InputError("cross_ratio: coincident points in a denominator");
  return num / den;
}

ConcyclicQuad make_concyclic_quad(const std::array<Vec3, 4>& p, double tol) {
  double scale = 1.0;
  for (const auto& x : p) scale = std::max(scale, x.norm());
  const double eps = 1e-12 * scale;
  // Pick three pairwise distinct points to define the circle.
  std::array<int, 3> idx{-1, -1, -1};
  int found = 0;
  for (int i = 0; i < 4 && found < 3; ++i) {
    bool distinct = true;
    for (int k = 0; k < found; ++k)
      if ((p[i] - p[idx[k]]).norm() <= eps) distinct = false;
    if (distinct) idx[found++] = i;
  }
  if (found < 3) throw InputError("make_concyclic_quad: fewer than three distinct points");
  const Vec3 &x = p[idx[0]], &y = p[idx[1]], &z = p[idx[2]];
  const Vec3 a = y - x, b = z - x;
  ConcyclicQuad q;
  q.points = p;
  if (a.cross(b).norm() <= 1e-12 * a.norm() * b.norm()) {
    q.circle.is_line = true;
    q.circle.direction = a.normalized();
    q.circle.point = x;
    for (const auto& w : p) {
      const Vec3 r = w - x;
      if ((r - r.dot(q.circle.direction) * q.circle.direction).norm() > tol * scale) {
        throw InputError("make_concyclic_quad: points are not concyclic");
      }
    }
    return q;
  }
  const Vec3 axb = a.cross(b);
  q.circle.center = x + (a.squaredNorm() * b - b.squaredNorm() * a).cross(axb) / (2 * axb.squaredNorm());
  q.circle.radius = (x - q.circle.center).norm();
  q.circle.normal = axb.normalized();
  for (const auto& w : p) {
    const Vec3 r = w - q.circle.center;
    if (std::abs(r.norm() - q.circle.radius) > tol * q.circle.radius ||
        std::abs(r.dot(q.circle.normal)) > tol * q.circle.radius) {
      throw InputError("make_concyclic_quad: points are not concyclic");
    }
  }
  return q;
}

Complex cross_ratio(const ConcyclicQuad& q, CrossPattern pattern) {
  std::array<Complex, 4> z;
  if (q.circle.is_line) {
    for (int i = 0; i < 4; ++i) z[i] = Complex((q.points[i] - q.circle.point).dot(q.circle.direction), 0.0);
  } else {
    const Vec3 e1 = q.circle.normal.unitOrthogonal();
    const Vec3 e2 = q.circle.normal.cross(e1);
    for (int i = 0; i < 4; ++i) {
      const Vec3 r = (q.points[i] - q.circle.center) / q.circle.radius;
      z[i] = Complex(r.dot(e1), r.dot(e2));
    }
  }
  return cross_ratio(z, pattern);
}

Complex cross_ratio_on_sphere(const std::array<Vec3, 4>& p, const Vec3& center, double radius,
                              CrossPattern pattern) {
  if (!(radius > 0)) throw InputError("cross_ratio_on_sphere: radius must be positive");
  Vec3 sum = Vec3::Zero();
  for (const auto& x : p) {
    if (std::abs((x - center).norm() - radius) > 1e-8 * radius) {
      throw InputError("cross_ratio_on_sphere: point is not on the sphere");
    }
    sum += (x - center) / radius;
  }
  // Project from the pole farthest (on average) from the points.
  const Vec3 u = sum.norm() > 1e-6 ? Vec3(-sum.normalized()) : Vec3(-((p[0] - center).normalized()));
  const Vec3 pole = center + radius * u;
  const Vec3 foot = center - radius * u;
  const Vec3 e1 = u.unitOrthogonal();
  const Vec3 e2 = e1.cross(u);
  std::array<Complex, 4> z;
  for (int i = 0; i < 4; ++i) {
    const Vec3 d = p[i] - pole;
    if (d.norm() <= 1e-12 * radius) throw NumericalError("cross_ratio_on_sphere: point at the projection pole");
    const Vec3 X = pole + (4 * radius * radius / d.squaredNorm()) * d;
    z[i] = Complex((X - foot).dot(e1), (X - foot).dot(e2)) / radius;
  }
  return cross_ratio(z, pattern);
}

double conformal_angle(const Curve& c, double t1, double t2) {
  if (t1 == t2) throw InputError("conformal_angle: parameters must differ");
  const Vec3 x = c.point(t1);
  const double scale = (c.point(t2) - x).norm();
  if (!(scale > 0)) throw InputError("conformal_angle: points coincide");
  const LocalSimilarity local(c, x, scale);
  const TriVector g1 = tangent_circle_at_first(local, t1, t2);
  const TriVector g2 = tangent_circle_at_second(local, t1, t2);
  const double cosv = tri_inner(g1, g2);
  if (cosv > 0.5) {
    // Small angles: tri_inner(g1 - g2, g1 - g2) = 2 - 2 cos θ = 4 sin^2(θ/2).
    const TriVector d = g1 - g2;
    return 2 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, tri_square(d))) / 2));
  }
  return std::acos(std::clamp(cosv, -1.0, 1.0));
}

double conformal_angle_euclidean(const Curve& c, double t1, double t2) {
  if (t1 == t2) throw InputError("conformal_angle_euclidean: parameters must differ");
  const Jet jx = c.jet(t1), jy = c.jet(t2);
  const Vec3 tx = jx[1].normalized(), ty = jy[1].normalized();
  const Vec3 d = (jy[0] - jx[0]).normalized();
  // Tangent at x of the circle through x and y that is tangent to ty at y.
  const Vec3 other = 2 * ty.dot(d) * d - ty;
  return std::atan2(tx.cross(other).norm(), tx.dot(other));
}

double arclength_via_angle(const Curve& c, double t, double h) {
  if (h == 0) throw InputError("arclength_via_angle: h must be non-zero");
  const double theta = conformal_angle(c, t, t + h);
  auto speed = [&c](double u) { return c.jet(u)[1].norm(); };
  const double ds =
      std::abs(boost::math::quadrature::gauss_kronrod<double, 15>::integrate(speed, t, t + h, 10, 1e-14));
  return std::sqrt(6 * theta) / ds;
}

namespace {

// The intersection of S with the circle that is not (close to) `known`.
Vec3 second_intersection(const Vec5& sigma, const TriVector& circle, const Vec3& known) {
  const Eigen::Matrix<double, 5, 3> B = tri_factor(circle);
  const Incidence in = incidence_intersection(sigma, B, 1e-12);
  if (in.kind != Incidence::Kind::transverse) {
    throw NumericalError(std::string("cross-ratio experiment: sphere meets osculating circle as ") +
                         to_string(in.kind));
  }
  const auto p0 = project_euclidean(in.directions[0], 1e-7);
  const auto p1 = project_euclidean(in.directions[1], 1e-7);
  if (!p0 || !p1) throw NumericalError("cross-ratio experiment: intersection at infinity");
  return (*p0 - known).norm() > (*p1 - known).norm() ? *p0 : *p1;
}

CrossRatioRecord local_experiment(const Curve& c, double t, double h);

}  // namespace

CrossRatioRecord infinitesimal_cross_ratio_experiment(const Curve& c, double t, double h) {
  if (!(h > 0)) throw InputError("cross-ratio experiment: h must be positive");
  const double scale = (c.point(t + h) - c.point(t)).norm();
  if (!(scale > 0)) throw InputError("cross-ratio experiment: points coincide");
  const LocalSimilarity local(c, c.point(t), scale);
  CrossRatioRecord rec = local_experiment(local, t, h);
  rec.y_t = c.point(t) + scale * rec.y_t;
  rec.y_th = c.point(t) + scale * rec.y_th;
  rec.delta_rho = conformal_arclength(c, t, t + h);
  rec.rho_ratio = std::sqrt(6.0) * std::pow(std::abs(rec.cross), 0.25) / rec.delta_rho;
  return rec;
}

namespace {

CrossRatioRecord local_experiment(const Curve& c, double t, double h) {
  const Jet j = c.jet(t);
  const Vec3 x = j[0];
  const Vec3 T = j[1].normalized();
  const Vec3 x2 = c.point(t + h);
  const Vec3 delta = x2 - x;
  const double lambda = delta.squaredNorm() / (2 * T.dot(delta));
  if (!std::isfinite(lambda)) throw NumericalError("cross-ratio experiment: orthogonal sphere is degenerate");
  const Vec3 center = x + lambda * T;
  const double radius = std::abs(lambda);
  const Vec5 sigma = sphere_to_desitter(EuclideanSphere::sphere(center, radius));

  CrossRatioRecord rec;
  rec.y_t = second_intersection(sigma, osculating_circle(c, t).gamma, x);
  rec.y_th = second_intersection(sigma, osculating_circle(c, t + h).gamma, x2);
  // Snap onto S to remove round-off before the stereographic projection.
  auto snap = [&](const Vec3& p) { return Vec3(center + radius * (p - center).normalized()); };
  rec.cross = cross_ratio_on_sphere({snap(x), snap(rec.y_th), snap(x2), snap(rec.y_t)}, center, radius,
                                    CrossPattern::standard);
  return rec;
}

}  // namespace

}  // namespace confarc
