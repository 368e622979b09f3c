#pragma once

// Exterior algebra of R^5_1 in degrees 2 and 3. A 3-space is stored by its
// ten Plücker coordinates in the order
//   012, 013, 014, 023, 024, 034, 123, 124, 134, 234
// and a 2-space by ten coordinates in the order
//   01, 02, 03, 04, 12, 13, 14, 23, 24, 34.
// Oriented timelike 3-spaces of unit norm are oriented circles of S^3.

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "confarc/errors.hpp"
#include "confarc/minkowski.hpp"

namespace confarc {

template <typename Scalar>
using TriVectorT = Eigen::Matrix<Scalar, 10, 1>;
template <typename Scalar>
using BiVectorT = Eigen::Matrix<Scalar, 10, 1>;
using TriVector = TriVectorT<double>;
using BiVector = BiVectorT<double>;
using Mat10 = Eigen::Matrix<double, 10, 10>;

inline constexpr std::array<std::array<int, 3>, 10> kTriIndex = {{{0, 1, 2},
                                                                   {0, 1, 3},
                                                                   {0, 1, 4},
                                                                   {0, 2, 3},
                                                                   {0, 2, 4},
                                                                   {0, 3, 4},
                                                                   {1, 2, 3},
                                                                   {1, 2, 4},
                                                                   {1, 3, 4},
                                                                   {2, 3, 4}}};

inline constexpr std::array<std::array<int, 2>, 10> kBiIndex = {
    {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

/// Position of the sorted triple (i<j<k) in the wire order.
constexpr int tri_slot(int i, int j, int k) {
  for (int s = 0; s < 10; ++s) {
    if (kTriIndex[s][0] == i && kTriIndex[s][1] == j && kTriIndex[s][2] == k) return s;
  }
  return -1;
}

/// Signature of the coordinate: +1 when the index set contains 0.
constexpr int multi_index_sign(int first_index) { return first_index == 0 ? 1 : -1; }

/// Antisymmetric access p_{ijk} for arbitrary i, j, k.
template <typename Derived>
typename Derived::Scalar tri_coord(const Eigen::MatrixBase<Derived>& P, int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  int sign = 1;
  if (i > j) { std::swap(i, j); sign = -sign; }
  if (j > k) { std::swap(j, k); sign = -sign; }
  if (i > j) { std::swap(i, j); sign = -sign; }
  return sign * P(tri_slot(i, j, k));
}

/// x1 ∧ x2 ∧ x3: the 3x3 minors of the 5x3 matrix [x1 x2 x3].
template <typename Derived>
TriVectorT<typename Derived::Scalar> wedge3(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  static_assert(Derived::RowsAtCompileTime == 5 && Derived::ColsAtCompileTime == 3,
                "wedge3 expects a 5x3 matrix");
  TriVectorT<Scalar> p;
  for (int s = 0; s < 10; ++s) {
    const auto& I = kTriIndex[s];
    Eigen::Matrix<Scalar, 3, 3> m;
    for (int r = 0; r < 3; ++r) m.row(r) = X.row(I[r]);
    p(s) = m.determinant();
  }
  return p;
}

template <typename D1, typename D2, typename D3>
TriVectorT<typename D1::Scalar> wedge3(const Eigen::MatrixBase<D1>& x1,
                                       const Eigen::MatrixBase<D2>& x2,
                                       const Eigen::MatrixBase<D3>& x3) {
  Eigen::Matrix<typename D1::Scalar, 5, 3> X;
  X << x1, x2, x3;
  return wedge3(X);
}

/// u ∧ v in the bivector order.
template <typename D1, typename D2>
BiVectorT<typename D1::Scalar> wedge2(const Eigen::MatrixBase<D1>& u,
                                      const Eigen::MatrixBase<D2>& v) {
  BiVectorT<typename D1::Scalar> q;
  for (int s = 0; s < 10; ++s) {
    const int i = kBiIndex[s][0], j = kBiIndex[s][1];
    q(s) = u(i) * v(j) - u(j) * v(i);
  }
  return q;
}

/// Coordinate form of the index-4 inner product: sum eps_I p_I q_I.
template <typename D1, typename D2>
typename D1::Scalar tri_inner(const Eigen::MatrixBase<D1>& P, const Eigen::MatrixBase<D2>& Q) {
  typename D1::Scalar acc = 0;
  for (int s = 0; s < 10; ++s) acc += multi_index_sign(kTriIndex[s][0]) * P(s) * Q(s);
  return acc;
}

template <typename Derived>
typename Derived::Scalar tri_square(const Eigen::MatrixBase<Derived>& P) {
  return tri_inner(P, P);
}

/// Determinant form -det(<x_i, y_j>) on decomposables; columns of X, Y span the spaces.
template <typename D1, typename D2>
typename D1::Scalar tri_inner_det(const Eigen::MatrixBase<D1>& X, const Eigen::MatrixBase<D2>& Y) {
  using Scalar = typename D1::Scalar;
  Eigen::Matrix<Scalar, 3, 3> G;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = lorentz(X.col(i), Y.col(j));
  return -G.determinant();
}

/// Bivector inner product, coordinate form (same sign rule as tri_inner).
template <typename D1, typename D2>
typename D1::Scalar bi_inner(const Eigen::MatrixBase<D1>& P, const Eigen::MatrixBase<D2>& Q) {
  typename D1::Scalar acc = 0;
  for (int s = 0; s < 10; ++s) acc += multi_index_sign(kBiIndex[s][0]) * P(s) * Q(s);
  return acc;
}

/// Bivector inner product, determinant form -det(<x_i, y_j>) for 2-frames.
template <typename D1, typename D2>
typename D1::Scalar bi_inner_det(const Eigen::MatrixBase<D1>& X, const Eigen::MatrixBase<D2>& Y) {
  using Scalar = typename D1::Scalar;
  Eigen::Matrix<Scalar, 2, 2> G;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) G(i, j) = lorentz(X.col(i), Y.col(j));
  return -G.determinant();
}

namespace detail {

// For pivot x with sorted complement (a, b, c, d):
//   B_x(P, Q) = P(xab) Q(xcd) - P(xac) Q(xbd) + P(xad) Q(xbc).
template <typename D1, typename D2>
Eigen::Matrix<typename D1::Scalar, 5, 1> plucker_bilinear(const Eigen::MatrixBase<D1>& P,
                                                          const Eigen::MatrixBase<D2>& Q) {
  Eigen::Matrix<typename D1::Scalar, 5, 1> r;
  for (int x = 0; x < 5; ++x) {
    std::array<int, 4> c{};
    int n = 0;
    for (int i = 0; i < 5; ++i)
      if (i != x) c[n++] = i;
    const int a = c[0], b = c[1], cc = c[2], d = c[3];
    r(x) = tri_coord(P, x, a, b) * tri_coord(Q, x, cc, d) -
           tri_coord(P, x, a, cc) * tri_coord(Q, x, b, d) +
           tri_coord(P, x, a, d) * tri_coord(Q, x, b, cc);
  }
  return r;
}

}  // namespace detail

/// The five quadratic Plücker relations; all vanish iff P is decomposable.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 5, 1> plucker_residuals(const Eigen::MatrixBase<Derived>& P) {
  return detail::plucker_bilinear(P, P);
}

/// Jacobian (5x10) of the Plücker residuals at P.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 5, 10> plucker_jacobian(const Eigen::MatrixBase<Derived>& P) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, 5, 10> Jac;
  for (int s = 0; s < 10; ++s) {
    const TriVectorT<Scalar> e = TriVectorT<Scalar>::Unit(s);
    Jac.col(s) = detail::plucker_bilinear(P, e) + detail::plucker_bilinear(e, P);
  }
  return Jac;
}

/// max |residual| <= tol * |P|^2.
template <typename Derived>
bool is_decomposable(const Eigen::MatrixBase<Derived>& P, typename Derived::Scalar tol = 1e-9) {
  const auto scale = P.squaredNorm();
  return plucker_residuals(P).cwiseAbs().maxCoeff() <= tol * scale;
}

/// Psi(A): entry (I, J) is the minor of A with rows I and columns J.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 10, 10> psi_map(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, 10, 10> out;
  for (int I = 0; I < 10; ++I) {
    for (int J = 0; J < 10; ++J) {
      Eigen::Matrix<Scalar, 3, 3> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = A(kTriIndex[I][r], kTriIndex[J][c]);
      out(I, J) = m.determinant();
    }
  }
  return out;
}

/// diag(eps_I), the Gram matrix of tri_inner.
inline Mat10 tri_metric() {
  Mat10 E = Mat10::Zero();
  for (int s = 0; s < 10; ++s) E(s, s) = multi_index_sign(kTriIndex[s][0]);
  return E;
}

/// max |M^T E M - E|; zero for elements of O(6,4).
inline double o64_residual(const Mat10& M) {
  const Mat10 E = tri_metric();
  return (M.transpose() * E * M - E).cwiseAbs().maxCoeff();
}

/// P / sqrt(tri_inner(P, P)); refuses anything that is not timelike.
template <typename Derived>
TriVectorT<typename Derived::Scalar> tri_normalize(const Eigen::MatrixBase<Derived>& P) {
  const auto q = tri_square(P);
  if (!(q > 0)) throw NumericalError("tri_normalize: 3-space is not timelike");
  using std::sqrt;
  return P / sqrt(q);
}

/// Counts of (negative, zero, positive) eigenvalues of the Lorentz Gram matrix of
/// the column span of X, with |lambda| <= tol * max|lambda| counted as zero.
template <typename Derived>
std::array<int, 3> restricted_signature(const Eigen::MatrixBase<Derived>& X, double tol = 1e-10) {
  const Eigen::MatrixXd B = X.template cast<double>();
  const Eigen::MatrixXd J = minkowski_metric<double, 5>();
  const Eigen::MatrixXd G = B.transpose() * J * B;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  std::array<int, 3> out{0, 0, 0};
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol * scale) ++out[1];
    else if (ev(i) < 0) ++out[0];
    else ++out[2];
  }
  return out;
}

/// Result of Lorentz Gram-Schmidt: columns satisfy <b_i, b_j> = signs_i delta_ij.
struct LorentzFrame {
  Eigen::MatrixXd basis;
  std::vector<int> signs;
};

/// Lorentz Gram-Schmidt with pivoting on |L(w)| / |w|^2. Throws NumericalError when
/// the span is degenerate (contains a null direction orthogonal to the whole span).
inline LorentzFrame lorentz_orthonormalize(const Eigen::MatrixXd& V, double tol = 1e-10) {
  const Eigen::Index dim = V.rows();
  std::vector<Eigen::VectorXd> work;
  const double scale = V.colwise().norm().maxCoeff();
  for (Eigen::Index c = 0; c < V.cols(); ++c) work.push_back(V.col(c));
  LorentzFrame out;
  std::vector<Eigen::VectorXd> found;
  while (!work.empty()) {
    for (auto& w : work) {
      for (std::size_t j = 0; j < found.size(); ++j) {
        w -= out.signs[j] * lorentz(w, found[j]) * found[j];
      }
    }
    std::vector<Eigen::VectorXd> live;
    for (auto& w : work)
      if (w.norm() > 1e-9 * scale) live.push_back(w);
    work = live;
    if (work.empty()) break;
    auto ratio = [](const Eigen::VectorXd& w) { return std::abs(lorentz_square(w)) / w.squaredNorm(); };
    std::size_t best = 0;
    for (std::size_t i = 1; i < work.size(); ++i)
      if (ratio(work[i]) > ratio(work[best])) best = i;
    if (ratio(work[best]) < tol) {
      double best_ratio = 0;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j) {
          const Eigen::VectorXd s = work[i] / work[i].norm() + work[j] / work[j].norm();
          if (s.norm() > 1e-9 && ratio(s) > best_ratio) {
            best_ratio = ratio(s);
            bi = i;
            bj = j;
          }
        }
      if (best_ratio < tol) throw NumericalError("lorentz_orthonormalize: degenerate subspace");
      work[bi] = work[bi] / work[bi].norm() + work[bj] / work[bj].norm();
      best = bi;
    }
    Eigen::VectorXd b = work[best];
    const double L = lorentz_square(b);
    b /= std::sqrt(std::abs(L));
    found.push_back(b);
    out.signs.push_back(L > 0 ? 1 : -1);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
  }
  out.basis.resize(dim, static_cast<Eigen::Index>(found.size()));
  for (std::size_t j = 0; j < found.size(); ++j) out.basis.col(static_cast<Eigen::Index>(j)) = found[j];
  return out;
}

/// Columns spanning the Lorentz-orthogonal complement of span(X) in R^5_1.
inline Eigen::MatrixXd lorentz_complement(const Eigen::MatrixXd& X, double tol = 1e-10) {
  const Eigen::MatrixXd M = X.transpose() * minkowski_metric<double, 5>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return svd.matrixV().rightCols(5 - rank);
}

/// A 5x3 frame B with wedge3(B) == P for a decomposable non-zero P.
inline Eigen::Matrix<double, 5, 3> tri_factor(const TriVector& P, double tol = 1e-9) {
  const double n2 = P.squaredNorm();
  if (n2 == 0) throw InputError("tri_factor: zero trivector");
  if (!is_decomposable(P, tol)) throw InputError("tri_factor: trivector is not decomposable");
  // Column j of M holds the 4-vector e_j ∧ P, indexed by the omitted coordinate.
  Mat5 M = Mat5::Zero();
  for (int j = 0; j < 5; ++j) {
    for (int s = 0; s < 10; ++s) {
      const auto& I = kTriIndex[s];
      if (I[0] == j || I[1] == j || I[2] == j) continue;
      int omitted = 0 + 1 + 2 + 3 + 4 - j - I[0] - I[1] - I[2];
      int inversions = 0;
      for (int r = 0; r < 3; ++r)
        if (I[r] < j) ++inversions;
      M(omitted, j) += ((inversions % 2) ? -1.0 : 1.0) * P(s);
    }
  }
  Eigen::JacobiSVD<Mat5> svd(M, Eigen::ComputeFullV);
  Eigen::Matrix<double, 5, 3> B = svd.matrixV().rightCols<3>();
  const TriVector W = wedge3(B);
  const double c = W.dot(P) / n2;
  B.col(0) /= c;
  return B;
}

/// The anti-isometry to the bivector space: the oriented Lorentz-orthonormal
/// complement u ∧ v of the 3-space of P, with det[x1 x2 x3 u v] > 0 when
/// x1 ∧ x2 ∧ x3 is a positive multiple of P.
inline BiVector anti_isometry_F(const TriVector& P, double tol = 1e-9) {
  if (tri_square(P) <= 0) throw InputError("anti_isometry_F: 3-space is not timelike");
  const Eigen::Matrix<double, 5, 3> B = tri_factor(P, tol);
  const LorentzFrame frame = lorentz_orthonormalize(lorentz_complement(B));
  if (frame.basis.cols() != 2) throw NumericalError("anti_isometry_F: complement is not 2-dimensional");
  Vec5 u = frame.basis.col(0);
  Vec5 v = frame.basis.col(1);
  Mat5 full;
  full << B, u, v;
  if (full.determinant() < 0) v = -v;
  return wedge2(u, v);
}

}  // namespace confarc
