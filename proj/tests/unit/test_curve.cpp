#include <doctest.h>

#include <cmath>
#include <random>

#include "confarc/curve.hpp"
#include "confarc/errors.hpp"
#include "confarc/sphereavg.hpp"

using namespace confarc;

namespace {

// Reference values from tests/oracle/derive_constants.py.
constexpr double kHelixRho = 4.442882938158366247;            // helix(1,1), [0, 2π]
constexpr double kEllipseQuarterRho = 1.714185140216869482;   // ellipse(2,1), [0, π/2]
constexpr double kCubicRho = 2.316711722018432622;            // twisted cubic, [-0.5, 0.5]
constexpr double kCubicRate = 2.449489742783178098;           // twisted cubic dρ/ds at 0
constexpr double kCubicTorsion0 = 1.632993161855452065;       // |T| at t = 0
constexpr double kCubicTorsion03 = 2.375614004729291848;      // |T| at t = 0.3

const Helix helix(1, 1, Interval{0, 2 * M_PI});
const TwistedCubic cubic(Interval{-1, 1});
const Ellipse ellipse(2, 1, Interval{0, 2 * M_PI});

// <lift^(i), lift^(j)> from the Euclidean jet alone: the lift satisfies
// <lift(u), lift(v)> = -|m(u) - m(v)|^2 / 2, differentiated i times in u, j in v.
double lift_gram_oracle(const Jet& m, int i, int j) {
  if (i == 0 && j == 0) return 0;
  if (i > 0 && j > 0) return m[i].dot(m[j]);
  const int n = std::max(i, j);
  double acc = 0, binom = 1;
  for (int k = 1; k < n; ++k) {
    binom = binom * (n - k + 1) / k;
    acc += binom * m[k].dot(m[n - k]);
  }
  return -0.5 * acc;
}

}  // namespace

TEST_CASE("frenet data of the standard families") {
  for (double t : {0.0, 0.4, 2.0, 5.5}) {
    const FrenetData h = frenet(helix, t);
    CHECK(std::abs(h.kappa - 0.5) < 1e-14);
    CHECK(std::abs(h.tau - 0.5) < 1e-14);
    CHECK(std::abs(h.kappa_s) < 1e-14);
    CHECK(std::abs(h.tau_s) < 1e-14);
    CHECK(std::abs(h.speed - std::sqrt(2.0)) < 1e-14);
  }
  for (double r : {0.5, 3.0}) {
    const CircleCurve circle(r, Interval{0, 2 * M_PI});
    const FrenetData f = frenet(circle, 1.1);
    CHECK(std::abs(f.kappa - 1 / r) < 1e-14);
    CHECK(std::abs(f.tau) < 1e-14);
  }
  const FrenetData c = frenet(cubic, 0.0);
  CHECK(std::abs(c.kappa - 2) < 1e-14);
  CHECK(std::abs(c.tau - 3) < 1e-14);
  // κ' at 0 vanishes by the symmetry t -> -t, (x, y, z) -> (-x, y, -z).
  CHECK(std::abs(c.kappa_s) < 1e-13);

  const PolynomialCurve line({std::vector<double>{0, 1}, std::vector<double>{0, 2}, std::vector<double>{1}},
                             Interval{-1, 1});
  const FrenetData l = frenet(line, 0.3);
  CHECK(l.kappa == 0.0);
  CHECK_FALSE(l.torsion_defined);
}

TEST_CASE("arc-length jet has unit speed") {
  for (double t : {-0.7, 0.0, 0.9}) {
    const Jet s = arclength_jet(cubic.jet(t));
    CHECK(std::abs(s[1].norm() - 1) < 1e-14);
    CHECK(std::abs(s[1].dot(s[2])) < 1e-12);
    CHECK(std::abs(s[2].norm() - frenet(cubic, t).kappa) < 1e-12);
  }
}

TEST_CASE("lift derivatives match the distance oracle") {
  const MoebiusImage image(random_moebius(3, 0.3), std::make_shared<TwistedCubic>(Interval{-1, 1}));
  for (const Curve* c : {static_cast<const Curve*>(&helix), static_cast<const Curve*>(&cubic),
                         static_cast<const Curve*>(&ellipse), static_cast<const Curve*>(&image)}) {
    for (double t : {-0.6, 0.1, 0.8}) {
      const Jet m = c->jet(t);
      const LiftJet L = lift_jet(m);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j <= i && i + j <= 6; ++j) {
          const double oracle = lift_gram_oracle(m, i, j);
          CHECK(std::abs(lorentz(L[i], L[j]) - oracle) < 1e-9 * (1 + std::abs(oracle)));
        }
    }
  }
}

TEST_CASE("gram table of arc-length lifts") {
  for (const Curve* c : {static_cast<const Curve*>(&helix), static_cast<const Curve*>(&cubic),
                         static_cast<const Curve*>(&ellipse)}) {
    for (double t : {0.2, 0.5, 0.9}) {
      const FrenetData f = frenet(*c, t);
      const double F2 = f.kappa * f.kappa;
      const double F3 = F2 * F2 + f.kappa_s * f.kappa_s + f.kappa_tau * f.kappa_tau;
      const LiftJet m = lift_jet(arclength_jet(c->jet(t)));
      CHECK(std::abs(lorentz_square(m[0])) < 1e-7);
      CHECK(std::abs(lorentz(m[0], m[1])) < 1e-7);
      CHECK(std::abs(lorentz_square(m[1]) - 1) < 1e-7);
      CHECK(std::abs(lorentz(m[0], m[2]) + 1) < 1e-7);
      CHECK(std::abs(lorentz(m[1], m[2])) < 1e-7);
      CHECK(std::abs(lorentz(m[0], m[3])) < 1e-7);
      CHECK(std::abs(lorentz(m[1], m[3]) + F2) < 1e-7);
      CHECK(std::abs(lorentz_square(m[2]) - F2) < 1e-7);
      CHECK(std::abs(lorentz_square(m[3]) - F3) < 1e-7 * std::max(1.0, F3));
    }
  }
}

TEST_CASE("conformal arc-length element") {
  for (double t : {0.0, 1.0, 4.0}) CHECK(std::abs(conformal_arclength_element(helix, t) - std::sqrt(0.5)) < 1e-14);
  const CircleCurve circle(2.0, Interval{0, 2 * M_PI});
  CHECK(conformal_arclength_element(circle, 0.3) < 1e-7);
  CHECK(conformal_arclength_element(ellipse, 0.0) < 1e-7);
  CHECK(std::abs(conformal_arclength_element(cubic, 0.0) - kCubicRate) < 1e-12);
}

TEST_CASE("conformal arc-length against reference values") {
  CHECK(std::abs(conformal_arclength(helix, 0, 2 * M_PI) - kHelixRho) < 1e-9);
  CHECK(std::abs(conformal_arclength(ellipse, 0, M_PI / 2) - kEllipseQuarterRho) < 1e-9);
  CHECK(std::abs(conformal_arclength(cubic, -0.5, 0.5) - kCubicRho) < 1e-9);
  const CircleCurve circle(1.5, Interval{0, 2 * M_PI});
  CHECK(std::abs(conformal_arclength(circle, 0, 2 * M_PI)) < 1e-9);
  // Orientation of the interval.
  CHECK(std::abs(conformal_arclength(cubic, 0.5, -0.5) + kCubicRho) < 1e-9);
  // The full ellipse crosses three interior vertices.
  CHECK(std::abs(conformal_arclength(ellipse, 0, 2 * M_PI) - 4 * kEllipseQuarterRho) < 1e-8);
  CHECK_THROWS_AS(conformal_arclength(helix, 0, 1, 0.0), InputError);
}

TEST_CASE("running profile") {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(-0.5 + i / 40.0);
  const std::vector<double> p = conformal_arclength_profile(cubic, g);
  REQUIRE(p.size() == g.size());
  CHECK(p.front() == 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
  CHECK(std::abs(p.back() - kCubicRho) < 1e-9);
  std::swap(g[3], g[4]);
  CHECK_THROWS_AS(conformal_arclength_profile(cubic, g), InputError);
}

TEST_CASE("vertices") {
  const CircleCurve circle(1.0, Interval{0, 2 * M_PI});
  for (double t : {0.0, 1.0, 3.0}) CHECK(is_vertex(circle, t, 1e-6));
  for (double t : {0.0, 1.0, 3.0}) CHECK_FALSE(is_vertex(helix, t, 1e-6));

  const double tol = vertex_tolerance(ellipse, 0, 2 * M_PI);
  int found = 0;
  for (int i = 0; i < 400; ++i) {
    const double t = 2 * M_PI * i / 400;
    const bool axis = i % 100 == 0;
    CHECK(is_vertex(ellipse, t, tol) == axis);
    found += axis;
  }
  CHECK(found == 4);
}

TEST_CASE("vertex set is conformally invariant") {
  const auto base = std::make_shared<Ellipse>(2.0, 1.0, Interval{0, 2 * M_PI});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MoebiusImage image(random_moebius(seed, 0.2), base);
    const double tol = vertex_tolerance(image, 0, 2 * M_PI);
    const double tol0 = vertex_tolerance(*base, 0, 2 * M_PI);
    for (double t : {0.0, 0.3, M_PI / 2, 2.0, M_PI, 3 * M_PI / 2}) {
      CHECK(is_vertex(image, t, tol) == is_vertex(*base, t, tol0));
    }
  }
}

TEST_CASE("conformal arc-length is moebius invariant") {
  const auto base = std::make_shared<TwistedCubic>(Interval{-0.5, 0.5});
  const double rho = conformal_arclength(*base, -0.5, 0.5);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const MoebiusImage image(random_moebius(seed + 20, 0.4), base);
    double image_rho = 0;
    try {
      image_rho = conformal_arclength(image, -0.5, 0.5);
    } catch (const NumericalError&) {
      continue;  // passes through infinity
    }
    CHECK(std::abs(image_rho - rho) / rho < 1e-6);
  }
}

TEST_CASE("conformal torsion") {
  for (double t : {0.0, 1.0, 2.5}) CHECK(std::abs(conformal_torsion(helix, t) - 1) < 1e-12);
  CHECK(std::abs(conformal_torsion(ellipse, 0.7)) < 1e-12);
  CHECK(std::abs(std::abs(conformal_torsion(cubic, 0.0)) - kCubicTorsion0) < 1e-9);
  CHECK(std::abs(std::abs(conformal_torsion(cubic, 0.3)) - kCubicTorsion03) < 1e-9);
  CHECK_THROWS_AS(conformal_torsion(ellipse, 0.0, 1e-6), NumericalError);
}

TEST_CASE("conformal torsion is the speed of the osculating sphere curve") {
  for (double t : {-0.3, 0.0, 0.3}) {
    const double ds_drho = sphere_sample(cubic, t).ds_dt / conformal_arclength_element(cubic, t);
    CHECK(std::abs(ds_drho - std::abs(conformal_torsion(cubic, t))) < 1e-3);
  }
}

TEST_CASE("light-cone form equals the element") {
  for (double t : {0.0, 2.0}) CHECK(std::abs(omega_form(helix, t) - std::sqrt(0.5)) < 1e-12);
  const CircleCurve circle(1.0, Interval{0, 2 * M_PI});
  CHECK(omega_form(circle, 0.4) < 1e-6);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  std::array<std::vector<double>, 3> coeffs;
  for (auto& c : coeffs)
    for (int k = 0; k < 6; ++k) c.push_back(u(rng) / (k + 1));
  coeffs[0][1] = 2.0;  // keep the speed away from zero
  const PolynomialCurve poly(coeffs, Interval{-0.5, 0.5});
  for (int i = 0; i < 50; ++i) {
    const double t = -0.5 + i / 49.0;
    CHECK(std::abs(omega_form(poly, t) - conformal_arclength_element(poly, t)) < 1e-8);
  }
}

TEST_CASE("invalid curves") {
  CHECK_THROWS_AS(Helix(0, 1, Interval{0, 1}), InputError);
  CHECK_THROWS_AS(CircleCurve(-1, Interval{0, 1}), InputError);
  CHECK_THROWS_AS(Ellipse(1, 0, Interval{0, 1}), InputError);
  CHECK_THROWS_AS(TwistedCubic(Interval{1, 0}), InputError);
  const PolynomialCurve still({std::vector<double>{1}, std::vector<double>{2}, std::vector<double>{3}},
                              Interval{0, 1});
  CHECK_THROWS_AS(frenet(still, 0.5), NumericalError);
}
