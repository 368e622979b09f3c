#include "confarc/desitter.hpp"

#include <cmath>

namespace confarc {

EuclideanSphere EuclideanSphere::sphere(const Vec3& center, double radius, int orientation) {
  if (!(radius > 0) || !std::isfinite(radius)) throw InputError("EuclideanSphere: radius must be positive");
  EuclideanSphere s;
  s.kind = Kind::sphere;
  s.center = center;
  s.radius = radius;
  s.orientation = orientation >= 0 ? 1 : -1;
  return s;
}

EuclideanSphere EuclideanSphere::plane(const Vec3& normal, double offset, int orientation) {
  const double n = normal.norm();
  if (!(n > 0)) throw InputError("EuclideanSphere: plane normal must be non-zero");
  EuclideanSphere s;
  s.kind = Kind::plane;
  s.normal = normal / n;
  s.offset = offset / n;
  s.orientation = orientation >= 0 ? 1 : -1;
  return s;
}

Vec5 lift_normal(const Vec3& p, const Vec3& n) {
  const double h = p.dot(n) / 2.0;
  Vec5 v;
  v << h, h, n(0), n(1), n(2);
  return v;
}

Vec5 sphere_to_desitter(const EuclideanSphere& s) {
  if (s.kind == EuclideanSphere::Kind::plane) {
    const Vec3 m = s.offset * s.normal;
    return s.orientation * lift_normal(m, s.normal);
  }
  if (!(s.radius > 0)) throw InputError("sphere_to_desitter: degenerate radius");
  // With the outward normal n the curvature in the direction of n is -1/r.
  const Vec3 n = Vec3::UnitX();
  const Vec3 m = s.center + s.radius * n;
  const Vec5 sigma = sphere_from_curvature_normal(lift_euclidean(m), lift_normal(m, n), -1.0 / s.radius);
  return s.orientation * sigma;
}

EuclideanSphere desitter_to_sphere(const Vec5& sigma, double tol) {
  if (std::abs(lorentz_square(sigma) - 1.0) > 1e-9) throw InputError("desitter_to_sphere: not a unit spacelike vector");
  const double a = sigma(1) - sigma(0);
  const Vec3 s = sigma.tail<3>();
  if (std::abs(a) <= tol * sigma.norm()) {
    return EuclideanSphere::plane(s, sigma(0) + sigma(1), 1);
  }
  EuclideanSphere out = EuclideanSphere::sphere(-2.0 * s / a, 2.0 / std::abs(a), 1);
  if (lorentz(sphere_to_desitter(out), sigma) < 0) out.orientation = -1;
  return out;
}

const char* to_string(LorentzSeparation::Kind k) {
  switch (k) {
    case LorentzSeparation::Kind::intersecting: return "intersecting";
    case LorentzSeparation::Kind::tangent: return "tangent";
    case LorentzSeparation::Kind::disjoint: return "disjoint";
  }
  return "?";
}

const char* to_string(Incidence::Kind k) {
  switch (k) {
    case Incidence::Kind::empty: return "empty";
    case Incidence::Kind::transverse: return "transverse";
    case Incidence::Kind::tangent: return "tangent";
    case Incidence::Kind::single: return "single";
    case Incidence::Kind::degenerate: return "degenerate";
  }
  return "?";
}

Incidence incidence_intersection(const Vec5& sigma, const Eigen::Matrix<double, 5, Eigen::Dynamic>& subspace,
                                 double tol) {
  const Eigen::Index k = subspace.cols();
  if (k != 2 && k != 3) throw InputError("incidence_intersection: subspace must be 2- or 3-dimensional");
  Eigen::Matrix<double, 5, Eigen::Dynamic> S = subspace;
  for (Eigen::Index c = 0; c < k; ++c) {
    const double n = S.col(c).norm();
    if (n == 0) throw InputError("incidence_intersection: zero spanning vector");
    S.col(c) /= n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> rank_check(S);
  const auto sv = rank_check.singularValues();
  if (sv(k - 1) <= 1e-10 * sv(0)) throw InputError("incidence_intersection: spanning vectors are dependent");

  const Eigen::RowVectorXd r = sigma.transpose() * minkowski_metric<double, 5>() * S;
  Incidence out;
  if (r.norm() <= tol * sigma.norm()) {
    out.kind = Incidence::Kind::degenerate;
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullV);
  const Eigen::MatrixXd Y = S * svd.matrixV().rightCols(k - 1);

  if (k == 2) {
    const Vec5 y = Y.col(0);
    if (std::abs(lorentz_square(y)) <= tol * y.squaredNorm()) {
      out.kind = Incidence::Kind::single;
      out.directions.push_back(y);
    } else {
      out.kind = Incidence::Kind::empty;
    }
    return out;
  }

  const Eigen::Matrix2d G = Y.transpose() * minkowski_metric<double, 5>() * Y;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(G);
  const double l1 = es.eigenvalues()(0), l2 = es.eigenvalues()(1);
  const Eigen::Vector2d e1 = es.eigenvectors().col(0), e2 = es.eigenvectors().col(1);
  const double scale = std::max(std::abs(l1), std::abs(l2));
  const bool z1 = std::abs(l1) <= tol * std::max(scale, 1.0);
  const bool z2 = std::abs(l2) <= tol * std::max(scale, 1.0);
  if (z1 && z2) {
    out.kind = Incidence::Kind::degenerate;
  } else if (z1 || z2) {
    out.kind = Incidence::Kind::tangent;
    out.directions.push_back(Y * (z1 ? e1 : e2));
  } else if (l1 < 0 && l2 > 0) {
    out.kind = Incidence::Kind::transverse;
    const double a = std::sqrt(l2), b = std::sqrt(-l1);
    out.directions.push_back(Y * (a * e1 + b * e2));
    out.directions.push_back(Y * (a * e1 - b * e2));
  } else {
    out.kind = Incidence::Kind::empty;
  }
  return out;
}

Vec5 point_pair_in_circle(const Vec5& x, const Vec5& y, const Eigen::Matrix<double, 5, 3>& W) {
  Eigen::Matrix<double, 2, 3> M;
  const Mat5 J = minkowski_metric<double, 5>();
  M.row(0) = x.transpose() * J * W;
  M.row(1) = y.transpose() * J * W;
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(M, Eigen::ComputeFullV);
  const Vec5 v = W * svd.matrixV().col(2);
  const double L = lorentz_square(v);
  if (!(L > 0)) throw NumericalError("point_pair_in_circle: orthogonal direction is not spacelike");
  return v / std::sqrt(L);
}

}  // namespace confarc
