#include <doctest.h>

#include <cmath>
#include <random>

#include "confarc/grassmann.hpp"

using namespace confarc;

namespace {

Vec5 e(int i) { return Vec5::Unit(i); }

Vec5 gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Vec5 v;
  for (int k = 0; k < 5; ++k) v(k) = n(rng);
  return v;
}

// A normalized circle through three random points.
TriVector random_circle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  auto lift = [&] { return lift_euclidean(Vec3(u(rng), u(rng), u(rng))); };
  return tri_normalize(wedge3(lift(), lift(), lift()));
}

}  // namespace

TEST_CASE("coordinate order") {
  CHECK(tri_slot(0, 1, 2) == 0);
  CHECK(tri_slot(0, 3, 4) == 5);
  CHECK(tri_slot(1, 2, 3) == 6);
  CHECK(tri_slot(2, 3, 4) == 9);
}

TEST_CASE("wedge of coordinate vectors") {
  const TriVector P = wedge3(e(0), e(1), e(2));
  CHECK(P(0) == 1.0);
  CHECK(P.tail<9>().cwiseAbs().maxCoeff() == 0.0);
  CHECK(wedge3(e(0), e(1), e(0)).isZero());
}

TEST_CASE("wedge is alternating") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const Vec5 a = gaussian(rng), b = gaussian(rng), c = gaussian(rng);
    const TriVector P = wedge3(a, b, c);
    CHECK((wedge3(b, a, c) + P).norm() <= 1e-13 * P.norm());
    CHECK((wedge3(a, c, b) + P).norm() <= 1e-13 * P.norm());
    CHECK((wedge3(c, a, b) - P).norm() <= 1e-13 * P.norm());
    Eigen::Matrix<double, 5, 3> X;
    X << a, b, c;
    CHECK((wedge3(X) - P).norm() <= 1e-13 * P.norm());
  }
}

TEST_CASE("inner product signs") {
  const TriVector P = wedge3(e(0), e(1), e(2));
  const TriVector Q = wedge3(e(1), e(2), e(3));
  CHECK(tri_inner(P, P) == 1.0);
  CHECK(tri_inner(Q, Q) == -1.0);
  CHECK(tri_inner(P, Q) == 0.0);
  // Agrees with minus the Gram determinant.
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    Eigen::Matrix<double, 5, 3> X, Y;
    for (int c = 0; c < 3; ++c) {
      X.col(c) = gaussian(rng);
      Y.col(c) = gaussian(rng);
    }
    CHECK(std::abs(tri_inner(wedge3(X), wedge3(Y)) - tri_inner_det(X, Y)) < 1e-11);
  }
}

TEST_CASE("plucker relations") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const TriVector P = wedge3(gaussian(rng), gaussian(rng), gaussian(rng));
    CHECK(plucker_residuals(P).cwiseAbs().maxCoeff() < 1e-12 * P.squaredNorm());
    CHECK(is_decomposable(P));
  }
  const TriVector S = wedge3(e(0), e(1), e(2)) + wedge3(e(0), e(3), e(4));
  CHECK(plucker_residuals(S).cwiseAbs().maxCoeff() > 0.5);
  CHECK_FALSE(is_decomposable(S));
  CHECK(plucker_residuals(TriVector::Zero().eval()).isZero());
}

TEST_CASE("three independent plucker relations at decomposables") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const TriVector P = wedge3(gaussian(rng), gaussian(rng), gaussian(rng));
    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 10>> svd(plucker_jacobian(P));
    const auto sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k) rank += sv(k) > 1e-10 * sv(0);
    CHECK(rank == 3);
  }
}

TEST_CASE("minor matrix map") {
  CHECK(psi_map(Mat5::Identity()).isApprox(Mat10::Identity()));
  Mat5 D = Mat5::Identity();
  D(0, 0) = -1;
  const Mat10 M = psi_map(D);
  for (int s = 0; s < 10; ++s) {
    CHECK(M(s, s) == (kTriIndex[s][0] == 0 ? -1.0 : 1.0));
  }
  CHECK((M - Mat10(M.diagonal().asDiagonal())).isZero());
}

TEST_CASE("minor matrix map is a homomorphism into O(6,4)") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MoebiusMap A = random_moebius(seed, 0.5), B = random_moebius(seed + 50, 0.5);
    const Mat10 PA = psi_map(A.matrix());
    CHECK(o64_residual(PA) < 1e-9);
    CHECK((psi_map((A * B).matrix()) - PA * psi_map(B.matrix())).cwiseAbs().maxCoeff() < 1e-9);
    const TriVector P = wedge3(gaussian(rng), gaussian(rng), gaussian(rng));
    const TriVector Q = wedge3(gaussian(rng), gaussian(rng), gaussian(rng));
    CHECK(std::abs(tri_inner((PA * P).eval(), (PA * Q).eval()) - tri_inner(P, Q)) < 1e-9 * P.norm() * Q.norm());
  }
}

TEST_CASE("moebius action on circles through the minor matrix") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MoebiusMap A = random_moebius(seed + 200, 0.4);
    std::array<Vec3, 3> x, y;
    for (int k = 0; k < 3; ++k) {
      x[k] = Vec3(u(rng), u(rng), u(rng));
      y[k] = *apply_moebius(A, x[k]);
    }
    const TriVector circle = tri_normalize(wedge3(lift_euclidean(x[0]), lift_euclidean(x[1]), lift_euclidean(x[2])));
    const TriVector image = tri_normalize(wedge3(lift_euclidean(y[0]), lift_euclidean(y[1]), lift_euclidean(y[2])));
    const TriVector mapped = psi_map(A.matrix()) * circle;
    CHECK(std::min((mapped - image).norm(), (mapped + image).norm()) < 1e-9 * image.norm());
  }
}

TEST_CASE("sign of the inner product classifies 3-spaces") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Eigen::Matrix<double, 5, 3> X;
    for (int c = 0; c < 3; ++c) X.col(c) = gaussian(rng);
    const auto sig = restricted_signature(X);
    const double q = tri_square(wedge3(X));
    if (sig[0] == 1 && sig[1] == 0) CHECK(q > 0);  // timelike
    if (sig[0] == 0 && sig[1] == 0) CHECK(q < 0);  // spacelike
  }
  Eigen::Matrix<double, 5, 3> iso;
  iso << e(0) + e(1), e(2), e(3);
  CHECK(restricted_signature(iso)[1] == 1);
  CHECK(tri_square(wedge3(iso)) == 0.0);
  CHECK_THROWS_AS(tri_normalize(wedge3(iso)), NumericalError);
  CHECK_THROWS_AS(tri_normalize(wedge3(e(1), e(2), e(3))), NumericalError);
}

TEST_CASE("factoring a decomposable trivector") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const TriVector P = wedge3(gaussian(rng), gaussian(rng), gaussian(rng));
    CHECK((wedge3(tri_factor(P)) - P).norm() < 1e-10 * P.norm());
  }
  CHECK_THROWS_AS(tri_factor(wedge3(e(0), e(1), e(2)) + wedge3(e(0), e(3), e(4))), InputError);
}

TEST_CASE("anti-isometry to the bivector space") {
  const BiVector F = anti_isometry_F(wedge3(e(0), e(1), e(2)));
  const BiVector e34 = wedge2(e(3), e(4));
  CHECK(std::min((F - e34).norm(), (F + e34).norm()) < 1e-12);
  CHECK(std::abs(bi_inner(F, F) + 1) < 1e-12);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const TriVector P = random_circle(rng), Q = random_circle(rng);
    CHECK(std::abs(bi_inner(anti_isometry_F(P), anti_isometry_F(Q)) + tri_inner(P, Q)) < 1e-9);
  }
  CHECK_THROWS_AS(anti_isometry_F(wedge3(e(1), e(2), e(3))), InputError);
}
