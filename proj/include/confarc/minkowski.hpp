#pragma once

// Linear algebra of the Minkowski space R^{n+2}_1 (coordinate 0 timelike,
// signature (-,+,...,+)), the light-cone charts of R^3 and S^3, and the
// Moebius group O(4,1) acting through the light cone.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "confarc/errors.hpp"

namespace confarc {

template <typename Scalar, int Dim>
using MinkVec = Eigen::Matrix<Scalar, Dim, 1>;

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Indefinite form -u0 v0 + u1 v1 + ... ; sizes must agree.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar lorentz(const Eigen::MatrixBase<DerivedA>& u,
                                  const Eigen::MatrixBase<DerivedB>& v) {
  if (u.size() != v.size() || u.size() < 2) {
    throw InputError("lorentz: dimension mismatch");
  }
  const Eigen::Index n = u.size() - 1;
  return -u(0) * v(0) + u.tail(n).dot(v.tail(n));
}

/// L(v) = <v, v>.
template <typename Derived>
typename Derived::Scalar lorentz_square(const Eigen::MatrixBase<Derived>& v) {
  return lorentz(v, v);
}

/// sqrt|L(v)|.
template <typename Derived>
typename Derived::Scalar lorentz_norm(const Eigen::MatrixBase<Derived>& v) {
  using std::abs;
  using std::sqrt;
  return sqrt(abs(lorentz_square(v)));
}

/// The Gram matrix J = diag(-1, 1, ..., 1).
template <typename Scalar, int Dim>
Eigen::Matrix<Scalar, Dim, Dim> minkowski_metric() {
  Eigen::Matrix<Scalar, Dim, Dim> J = Eigen::Matrix<Scalar, Dim, Dim>::Identity();
  J(0, 0) = Scalar(-1);
  return J;
}

enum class CausalClass { spacelike, lightlike, timelike, zero };

/// Classifies v by the sign of L(v). |L(v)| <= tol * |v|^2 (Euclidean) counts
/// as lightlike so the test is scale invariant.
template <typename Derived>
CausalClass causal_class(const Eigen::MatrixBase<Derived>& v,
                         typename Derived::Scalar tol = 1e-9) {
  const auto sq = v.squaredNorm();
  if (sq == 0) return CausalClass::zero;
  const auto L = lorentz_square(v);
  using std::abs;
  if (abs(L) <= tol * sq) return CausalClass::lightlike;
  return L > 0 ? CausalClass::spacelike : CausalClass::timelike;
}

enum class Chart { euclidean, spherical };

/// A point of the base space realized on the light cone of R^5_1.
template <typename Scalar>
struct LiftPoint {
  MinkVec<Scalar, 5> vector;
  Chart chart = Chart::euclidean;
};

/// x -> (1 + x.x/4, -1 + x.x/4, x), the Euclidean section E^3_0.
template <typename Derived>
MinkVec<typename Derived::Scalar, 5> lift_euclidean(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar q = x.squaredNorm() / Scalar(4);
  MinkVec<Scalar, 5> v;
  v << Scalar(1) + q, Scalar(-1) + q, x(0), x(1), x(2);
  return v;
}

template <typename Derived>
LiftPoint<typename Derived::Scalar> lift_point(const Eigen::MatrixBase<Derived>& x) {
  return {lift_euclidean(x), Chart::euclidean};
}

/// p in S^3 (unit vector of R^4) -> (1, p), the section S^3(1).
template <typename Derived>
MinkVec<typename Derived::Scalar, 5> lift_spherical(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  if (abs(p.squaredNorm() - Scalar(1)) > Scalar(1e-9)) {
    throw InputError("lift_spherical: point is not on the unit sphere");
  }
  MinkVec<Scalar, 5> v;
  v << Scalar(1), p(0), p(1), p(2), p(3);
  return v;
}

namespace detail {

template <typename Derived>
void require_light_cone(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar tol,
                        const char* who) {
  const auto sq = v.squaredNorm();
  if (sq == 0) throw InputError(std::string(who) + ": zero vector");
  using std::abs;
  if (abs(lorentz_square(v)) > tol * sq) {
    throw InputError(std::string(who) + ": vector is not lightlike");
  }
}

}  // namespace detail

/// Projects a light-cone vector to E^3_0 along its ray. Returns nullopt for the
/// ray of n1 = (1, 1, 0, 0, 0), the point at infinity.
template <typename Derived>
std::optional<Eigen::Matrix<typename Derived::Scalar, 3, 1>> project_euclidean(
    const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar tol = 1e-9) {
  using Scalar = typename Derived::Scalar;
  detail::require_light_cone(v, tol, "project_euclidean");
  const Scalar w = v(0) - v(1);
  using std::abs;
  if (abs(w) <= tol * v.norm()) return std::nullopt;
  return Eigen::Matrix<Scalar, 3, 1>(v.template tail<3>() * (Scalar(2) / w));
}

/// Projects a light-cone vector to S^3(1) (coordinate 0 normalized to 1).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 1> project_spherical(
    const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar tol = 1e-9) {
  detail::require_light_cone(v, tol, "project_spherical");
  return v.template tail<4>() / v(0);
}

/// Stereographic identification R^3 -> S^3 \ {n1 direction} through the light cone.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 1> euclidean_to_sphere(
    const Eigen::MatrixBase<Derived>& x) {
  const auto v = lift_euclidean(x);
  return v.template tail<4>() / v(0);
}

/// An element of O(4,1): A^T J A = J.
template <typename Scalar>
class MoebiusMapT {
 public:
  using Matrix = Eigen::Matrix<Scalar, 5, 5>;

  MoebiusMapT() : matrix_(Matrix::Identity()) {}

  /// Throws InputError when the O(4,1) residual exceeds tol.
  explicit MoebiusMapT(const Matrix& A, Scalar tol = Scalar(1e-9)) : matrix_(A) {
    if (residual() >= tol) throw InputError("MoebiusMap: matrix is not in O(4,1)");
  }

  const Matrix& matrix() const { return matrix_; }

  /// max |A^T J A - J|.
  Scalar residual() const {
    const Matrix J = minkowski_metric<Scalar, 5>();
    return (matrix_.transpose() * J * matrix_ - J).cwiseAbs().maxCoeff();
  }

  MoebiusMapT inverse() const {
    const Matrix J = minkowski_metric<Scalar, 5>();
    MoebiusMapT out;
    out.matrix_ = J * matrix_.transpose() * J;
    return out;
  }

  friend MoebiusMapT operator*(const MoebiusMapT& a, const MoebiusMapT& b) {
    MoebiusMapT out;
    out.matrix_ = a.matrix_ * b.matrix_;
    return out;
  }

 private:
  Matrix matrix_;
};

using MoebiusMap = MoebiusMapT<double>;

/// Conformal action on R^3 u {inf}. nullopt means the image is the point at infinity.
template <typename Scalar, typename Derived>
std::optional<Eigen::Matrix<Scalar, 3, 1>> apply_moebius(const MoebiusMapT<Scalar>& A,
                                                         const Eigen::MatrixBase<Derived>& x) {
  const MinkVec<Scalar, 5> v = A.matrix() * lift_euclidean(x);
  return project_euclidean(v, Scalar(1e-8));
}

/// True when M^T J + J M = 0 within tol, i.e. M lies in the Lie algebra o(4,1).
inline bool is_lorentz_generator(const Mat5& M, double tol = 1e-12) {
  const Mat5 J = minkowski_metric<double, 5>();
  return (M.transpose() * J + J * M).cwiseAbs().maxCoeff() <= tol * (1.0 + M.cwiseAbs().maxCoeff());
}

/// exp of an o(4,1) generator.
inline MoebiusMap moebius_exp(const Mat5& generator) {
  if (!is_lorentz_generator(generator)) {
    throw InputError("moebius_exp: generator is not in o(4,1)");
  }
  const Mat5 A = generator.exp();
  return MoebiusMap(A);
}

/// Deterministic random element of the identity component of O(4,1):
/// exp(J K) with K antisymmetric, entries uniform in [-scale, scale].
inline MoebiusMap random_moebius(std::uint64_t seed, double scale) {
  if (!(scale > 0)) throw InputError("random_moebius: scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-scale, scale);
  Mat5 K = Mat5::Zero();
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      K(i, j) = unif(rng);
      K(j, i) = -K(i, j);
    }
  }
  return moebius_exp(minkowski_metric<double, 5>() * K);
}

}  // namespace confarc
