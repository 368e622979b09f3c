#include <doctest.h>

#include <cmath>
#include <string>

#include "confarc/curve_io.hpp"
#include "confarc/errors.hpp"
#include "confarc/spline.hpp"

using namespace confarc;

namespace {

std::string helix_samples(int n, bool closed) {
  std::string s = R"({"kind":"samples","closed":)" + std::string(closed ? "true" : "false") + R"(,"points":[)";
  for (int i = 0; i < n; ++i) {
    const double t = 2 * M_PI * i / (closed ? n : n - 1);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g,%.17g]", i ? "," : "", std::cos(t), std::sin(t), t);
    s += buf;
  }
  return s + "]}";
}

}  // namespace

TEST_CASE("analytic specifications") {
  auto h = parse_curve_spec(R"({"kind":"helix","a":1.0,"b":1.0,"domain":[0.0,6.2832]})");
  CHECK(h->kind() == "helix");
  CHECK(h->domain().hi == 6.2832);
  CHECK((h->point(0.0) - Vec3(1, 0, 0)).norm() < 1e-15);

  auto c = parse_curve_spec(R"({"kind":"circle","r":2.5})");
  CHECK(c->kind() == "circle");
  CHECK(std::abs(c->domain().hi - 2 * M_PI) < 1e-15);
  CHECK(std::abs(c->point(0.0).x() - 2.5) < 1e-15);

  auto e = parse_curve_spec(R"({"kind":"ellipse"})");
  CHECK((e->point(0.0) - Vec3(2, 0, 0)).norm() < 1e-15);

  auto q = parse_curve_spec(R"({"kind":"twisted_cubic"})");
  CHECK(q->domain().lo == -1.0);
  CHECK(q->domain().hi == 1.0);

  auto p = parse_curve_spec(R"({"kind":"polynomial","coeffs":[[0,1],[0,0,1],[0,0,0,1]]})");
  CHECK((p->point(0.5) - q->point(0.5)).norm() < 1e-15);

  auto m = parse_curve_spec(R"({"kind":"moebius_image","seed":7,"scale":0.3,"base":{"kind":"helix"}})");
  CHECK(m->kind() == "moebius_image");
  const auto expected = apply_moebius(random_moebius(7, 0.3), Helix(1, 1, Interval{0, 1}).point(0.4));
  REQUIRE(expected.has_value());
  CHECK((m->point(0.4) - *expected).norm() < 1e-12);
}

TEST_CASE("rejected specifications") {
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"helix")"), InputError);
  CHECK_THROWS_AS(parse_curve_spec("[1,2,3]"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"a":1})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"spiral"})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"circle","r":"big"})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"circle","r":-1})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"helix","domain":[1]})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"helix","domain":[2,1]})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"polynomial","coeffs":[[0,1],[0]]})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"moebius_image","seed":1.5,"base":{"kind":"helix"}})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"moebius_image","seed":1})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"samples","points":[[0,0,0],[1,0,0]]})"), InputError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"kind":"samples","points":[[0,0],[1,0,0]]})"), InputError);
  CHECK_THROWS_AS(load_curve_spec("/nonexistent/curve.json"), InputError);
}

TEST_CASE("sampled curves") {
  auto s = parse_curve_spec(helix_samples(9, false));
  CHECK(s->kind() == "samples");
  std::string dup = R"({"kind":"samples","points":[)";
  for (int i = 0; i < 10; ++i) dup += std::string(i ? "," : "") + (i == 4 ? "[3,0,0]" : "[" + std::to_string(i) + ",0,0]");
  dup += "]}";
  CHECK_THROWS_AS(parse_curve_spec(dup), InputError);
}

TEST_CASE("smoothing spline recovers helix invariants") {
  auto s = parse_curve_spec(helix_samples(400, false));
  const auto& sc = dynamic_cast<const SampledCurve&>(*s);
  const Interval d = sc.domain();
  CHECK(std::abs(d.hi - d.lo - 2 * M_PI * std::sqrt(2.0)) < 1e-3);
  // Points are interpolated closely.
  for (std::size_t i = 0; i < 400; i += 37) {
    const double t = 2 * M_PI * i / 399;
    CHECK((sc.point(sc.param(i)) - Vec3(std::cos(t), std::sin(t), t)).norm() < 1e-6);
  }
  // Curvature, torsion and the conformal element away from the ends, with the
  // sampled-mode tolerance.
  for (double u : {0.3, 0.5, 0.7}) {
    const double t = d.lo + u * (d.hi - d.lo);
    const FrenetData f = frenet(sc, t);
    CHECK(std::abs(f.kappa - 0.5) < 1e-4);
    CHECK(std::abs(f.tau - 0.5) < 1e-3);
    CHECK(std::abs(conformal_arclength_element(sc, t) / f.speed - 0.5) < 1e-3);
  }
}

TEST_CASE("basis functions form a partition of unity") {
  std::vector<double> knots{0, 0, 0, 0, 0, 0, 0.5, 1, 1, 1, 1, 1, 1};
  for (double t : {0.1, 0.49, 0.77}) {
    const int span = t < 0.5 ? 5 : 6;
    const Eigen::MatrixXd N = bspline_basis_derivatives(knots, 5, span, t, 4);
    CHECK(std::abs(N.row(0).sum() - 1) < 1e-14);
    for (int r = 1; r <= 4; ++r) CHECK(std::abs(N.row(r).sum()) < 1e-9);
  }
}
