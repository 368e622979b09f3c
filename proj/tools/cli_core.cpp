#include "cli_core.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "confarc/confangle.hpp"
#include "confarc/errors.hpp"
#include "confarc/grassmann.hpp"
#include "confarc/halfmeasure.hpp"
#include "confarc/sphereavg.hpp"

namespace confarc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Conformal elements integrating to less than this per unit parameter are round-off
// (same floor as the library quadrature).
constexpr double kNoiseFloor = 1e-6;

std::vector<double> uniform_grid(Interval d, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = d.lo + (d.hi - d.lo) * i / (n - 1);
  g.back() = d.hi;
  return g;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

nlohmann::ordered_json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nullptr; }

double arc_length(const Curve& c, double a, double b) {
  auto speed = [&c](double t) { return c.jet(t)[1].norm(); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(speed, a, b, 20, 1e-13);
}

/// True when dρ vanishes somewhere on a fine grid of the domain.
bool has_vertex_on(const Curve& c, Interval d) {
  std::vector<double> q;
  double qmax = 0;
  for (double t : uniform_grid(d, 401)) {
    q.push_back(std::sqrt(vertex_quantity(frenet(c, t))));
    qmax = std::max(qmax, q.back());
  }
  if (!(qmax > 0)) return true;
  for (double v : q)
    if (v < 1e-3 * qmax) return true;
  return false;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.samples < 8) throw InputError("--samples must be at least 8");
  if (!(cfg.tol > 0)) throw InputError("--tol must be positive");
}

std::string render(const Table& t, Format f) {
  if (f == Format::json) {
    nlohmann::ordered_json doc;
    doc["command"] = t.command;
    doc["curve"] = t.curve;
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(json_cell(c));
      doc["rows"].push_back(r);
    }
    doc["summary"] = t.summary;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  for (const auto& [key, value] : t.summary.items()) {
    os << "# " << key << "=";
    if (value.is_number_float()) {
      os << format_double(value.get<double>());
    } else if (value.is_string()) {
      os << value.get<std::string>();
    } else {
      os << value.dump();
    }
    os << "\n";
  }
  return os.str();
}

Table cmd_invariants(const Curve& c, const RunConfig& cfg) {
  const Interval d = c.domain();
  const std::vector<double> grid = uniform_grid(d, cfg.samples);
  const std::vector<double> rho = conformal_arclength_profile(c, grid, cfg.tol);
  const double vtol = vertex_tolerance(c, d.lo, d.hi);
  Table t;
  t.command = "invariants";
  t.curve = c.kind();
  t.columns = {"t", "s", "rho", "drho_dt", "kappa", "tau", "T", "is_vertex"};
  double s = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) s += arc_length(c, grid[i - 1], grid[i]);
    const FrenetData f = frenet(c, grid[i]);
    const bool vertex = is_vertex(c, grid[i], vtol);
    const double T = vertex || !f.torsion_defined ? kNaN : conformal_torsion(c, grid[i], vtol);
    t.rows.push_back({grid[i], s, rho[i], conformal_arclength_element(c, grid[i]), f.kappa,
                      f.torsion_defined ? f.tau : kNaN, T, vertex});
  }
  t.summary["rho_total"] = rho.back();
  t.summary["arc_length_total"] = s;
  t.summary["vertex_tolerance"] = vtol;
  return t;
}

Table cmd_halfmeasure(const Curve& c, const RunConfig& cfg) {
  const Interval d = c.domain();
  std::vector<int> ns;
  for (int n = 16; n <= cfg.samples; n *= 2) ns.push_back(n);
  if (ns.empty()) ns.push_back(cfg.samples);

  auto gamma = [&c](double t) { return osculating_circle(c, t).gamma; };
  auto l_ddot = [&c](double t) { return tri_square(osculating_circle(c, t).gamma_tt); };
  const double quad = half_measure_quadrature(l_ddot, d.lo, d.hi, cfg.tol);
  // Below this the element is round-off lifted by the fourth root (vertex curves),
  // and errors relative to it mean nothing.
  const bool noise = quad <= kNoiseFloor * (d.hi - d.lo);
  const auto pts = convergence_order<TriVector>(
      gamma, [](const TriVector& x, const TriVector& y) { return tri_inner(x, y); }, d.lo, d.hi, ns, quad);

  Table t;
  t.command = "halfmeasure";
  t.curve = c.kind();
  t.columns = {"n", "polygonal", "quadrature", "error", "relative_error"};
  std::vector<double> h, err;
  for (const auto& p : pts) {
    t.rows.push_back({static_cast<long long>(p.n), p.sum, quad, p.error, noise ? kNaN : p.error / quad});
    h.push_back(p.h);
    err.push_back(p.error);
  }
  double order = kNaN;
  const int last = std::min<int>(4, static_cast<int>(pts.size()));
  bool positive = last >= 2 && !noise;
  for (std::size_t i = pts.size() - last; i < pts.size(); ++i) positive = positive && err[i] > 0;
  if (positive) order = fitted_order(h, err, last);
  const double scale = std::pow(12.0, 0.25);
  const double rho = conformal_arclength(c, d.lo, d.hi, cfg.tol);
  t.summary["noise_level"] = noise;
  t.summary["fitted_order"] = finite_or_null(order);
  t.summary["scaled_half_measure"] = scale * quad;
  t.summary["rho"] = rho;
  t.summary["relative_difference"] = finite_or_null(noise ? kNaN : std::abs(scale * quad - rho) / rho);
  t.summary["scaled_polygonal_relative_error"] =
      finite_or_null(noise ? kNaN : std::abs(scale * pts.back().sum - rho) / rho);
  return t;
}

Table cmd_angle(const Curve& c, const RunConfig& cfg) {
  const std::vector<double> grid = uniform_grid(c.domain(), cfg.samples);
  Table t;
  t.command = "angle";
  t.curve = c.kind();
  t.columns = {"t1", "t2", "theta", "theta_euclidean", "sqrt_6theta", "delta_rho", "ratio"};
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double theta = conformal_angle(c, grid[i], grid[i + 1]);
    const double root = std::sqrt(6 * theta);
    const double drho = conformal_arclength(c, grid[i], grid[i + 1], cfg.tol);
    t.rows.push_back({grid[i], grid[i + 1], theta, conformal_angle_euclidean(c, grid[i], grid[i + 1]), root, drho,
                      drho > kNoiseFloor * (grid[i + 1] - grid[i]) ? root / drho : kNaN});
  }
  return t;
}

Table cmd_sphereavg(const Curve& c, const RunConfig& cfg) {
  if (cfg.samples < 16) throw InputError("sphereavg: --samples (number of angles) must be at least 16");
  const Interval d = c.domain();
  const AverageRecord r = average_half_measure(c, d.lo, d.hi, cfg.samples);
  Table t;
  t.command = "sphereavg";
  t.curve = c.kind();
  t.columns = {"angles", "average", "average_quadrature", "rho", "ratio", "expected", "relative_error"};
  t.rows.push_back({static_cast<long long>(cfg.samples), r.average, r.average_quad, r.rho, r.ratio, r.expected,
                    std::abs(r.ratio - r.expected) / r.expected});
  return t;
}

Table cmd_export_embedding(const Curve& c, const RunConfig& cfg) {
  const std::vector<double> grid = uniform_grid(c.domain(), cfg.samples);
  std::vector<TriVector> gamma;
  for (double t : grid) gamma.push_back(osculating_circle(c, t).gamma);
  make_sign_coherent(gamma);
  Table t;
  t.command = "export-embedding";
  t.curve = c.kind();
  t.columns = {"t"};
  for (const auto& idx : kTriIndex) t.columns.push_back("p" + std::to_string(idx[0]) + std::to_string(idx[1]) +
                                                        std::to_string(idx[2]));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i]};
    for (int k = 0; k < 10; ++k) row.push_back(gamma[i](k));
    t.rows.push_back(std::move(row));
  }
  return t;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "?";
}

TangentSample random_tangent(const TriVector& gamma, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI), coef(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const TangentFrame fr = tangent_frame(gamma);
  auto null_row = [&](double phi) { return Eigen::RowVector3d(1.0, std::cos(phi), std::sin(phi)); };
  Eigen::Matrix<double, 2, 3> A;
  TangentSample out;
  const int kind = static_cast<int>(rng() % 5);
  const double phi = angle(rng);
  switch (kind) {
    case 0:  // w ⊗ n with n null
    case 1: {
      const double w0 = coef(rng), w1 = kind == 0 ? coef(rng) : 0.0;
      A.row(0) = w0 * null_row(phi);
      A.row(1) = w1 * null_row(phi);
      out.constructed_null = true;
      break;
    }
    case 2: {  // perturbed null construction
      A.row(0) = coef(rng) * null_row(phi);
      A.row(1) = coef(rng) * null_row(phi);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) += 1e-3 * gauss(rng);
      break;
    }
    case 3: {  // two null rows in different directions
      std::uniform_real_distribution<double> gap(0.5, 2 * M_PI - 0.5);
      A.row(0) = null_row(phi);
      A.row(1) = null_row(phi + gap(rng));
      break;
    }
    default:
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = gauss(rng);
  }
  out.gamma_dot = tangent_from_rows(fr, A);
  return out;
}

std::array<EuclideanSphere, 2> random_disjoint_spheres(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-1.0, 1.0), rad(0.2, 1.0);
  for (;;) {
    const Vec3 c1(pos(rng), pos(rng), pos(rng)), c2(pos(rng), pos(rng), pos(rng));
    const double r1 = rad(rng), r2 = rad(rng);
    const double d = (c1 - c2).norm();
    if (d > r1 + r2 + 0.05 || d < std::abs(r1 - r2) - 0.05) {
      return {EuclideanSphere::sphere(c1, r1), EuclideanSphere::sphere(c2, r2)};
    }
  }
}

SpherePairCheck sphere_pair_check(const EuclideanSphere& s1, const EuclideanSphere& s2, const Vec5& direction) {
  const Vec5 a = sphere_to_desitter(s1), b = sphere_to_desitter(s2);
  const LorentzSeparation sep = lorentz_separation(a, b);
  if (sep.kind != LorentzSeparation::Kind::disjoint) throw InputError("sphere_pair_check: spheres are not disjoint");
  Eigen::Matrix<double, 5, 3> W;
  W << a, b, direction;
  const Incidence in1 = incidence_intersection(a, W), in2 = incidence_intersection(b, W);
  if (in1.kind != Incidence::Kind::transverse || in2.kind != Incidence::Kind::transverse) {
    throw NumericalError("sphere_pair_check: orthogonal circle does not cut both spheres twice");
  }
  SpherePairCheck out;
  out.separation = sep.value;
  const Vec5 p1 = point_pair_in_circle(in1.directions[0], in1.directions[1], W);
  const Vec5 p2 = point_pair_in_circle(in2.directions[0], in2.directions[1], W);
  out.restricted_separation = lorentz_separation(p1, p2).value;

  std::array<Vec3, 4> x;
  const std::array<Vec5, 4> dirs{in1.directions[0], in2.directions[0], in1.directions[1], in2.directions[1]};
  for (int i = 0; i < 4; ++i) {
    const auto p = project_euclidean(dirs[i], 1e-9);
    if (!p) throw NumericalError("sphere_pair_check: intersection point at infinity");
    x[i] = *p;
  }
  // Same-side labels give the smaller of the two moduli.
  const double m1 = std::abs(cross_ratio(make_concyclic_quad(x), CrossPattern::standard));
  const double m2 = std::abs(cross_ratio(make_concyclic_quad({x[0], x[3], x[2], x[1]}), CrossPattern::standard));
  out.cross_modulus = std::min(m1, m2);
  const double e = std::exp(sep.value);
  out.expected_cross = std::pow((e - 1) / (e + 1), 2);
  return out;
}

namespace {

CheckResult judged(std::string name, double value, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.value = value;
  r.tolerance = tol;
  r.status = value < tol ? Status::pass : Status::fail;
  r.detail = std::move(detail);
  return r;
}

CheckResult skipped(std::string name, double tol, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tol;
  r.status = Status::skipped;
  r.value = kNaN;
  r.detail = std::move(why);
  return r;
}

double conformal_factor(const MoebiusMap& A, const Vec3& x) {
  const Vec5 v = A.matrix() * lift_euclidean(x);
  return (v(0) - v(1)) / 2;
}

}  // namespace

std::vector<CheckResult> run_checks(const CurvePtr& curve, const RunConfig& cfg) {
  const Curve& c = *curve;
  const Interval d = c.domain();
  const std::vector<double> grid = uniform_grid(d, cfg.samples);
  const double vtol = vertex_tolerance(c, d.lo, d.hi);
  std::vector<bool> vertex;
  for (double t : grid) vertex.push_back(is_vertex(c, t, vtol));
  const bool all_vertex = std::all_of(vertex.begin(), vertex.end(), [](bool b) { return b; });
  const bool domain_vertex = has_vertex_on(c, d);
  std::mt19937_64 rng(cfg.seed);
  std::vector<CheckResult> out;

  // dρ/dt against the fourth root of L(γ_tt).
  {
    const double tol = 1e-7;
    if (all_vertex) {
      out.push_back(skipped("length_element_identity", tol, "every sample is a vertex"));
    } else {
      double worst = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (vertex[i]) continue;
        const TriVector g = osculating_circle(c, grid[i]).gamma_tt;
        const double L = cfg.corrupt_signature ? g.squaredNorm() : tri_square(g);
        const double e = conformal_arclength_element(c, grid[i]);
        worst = std::max(worst, std::abs(e - std::pow(std::abs(L), 0.25)) / e);
      }
      out.push_back(judged("length_element_identity", worst, tol,
                           cfg.corrupt_signature ? "metric signature deliberately corrupted" : ""));
    }
  }

  // ρ and vertex flags under seeded Möbius maps.
  {
    const double tol = 1e-6;
    if (all_vertex) {
      out.push_back(skipped("moebius_invariance", tol, "conformal arc-length vanishes identically"));
    } else {
      const double rho = conformal_arclength(c, d.lo, d.hi, cfg.tol);
      const std::vector<double> fine = uniform_grid(d, 401);
      double worst = 0;
      int maps = 0, flips = 0;
      for (int attempt = 0; maps < 5 && attempt < 200; ++attempt) {
        const MoebiusMap A = random_moebius(rng(), 0.5);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (double t : fine) {
          const double f = conformal_factor(A, c.point(t));
          lo = std::min(lo, f);
          hi = std::max(hi, f);
        }
        if (!(lo > 1e-2 * hi)) continue;  // the curve passes too close to the preimage of infinity
        ++maps;
        const MoebiusImage image(A, curve);
        worst = std::max(worst, std::abs(conformal_arclength(image, d.lo, d.hi, cfg.tol) - rho) / rho);
        const double itol = vertex_tolerance(image, d.lo, d.hi);
        for (std::size_t i = 0; i < grid.size(); ++i) flips += is_vertex(image, grid[i], itol) != vertex[i];
      }
      if (maps < 5) throw NumericalError("moebius_invariance: could not draw maps away from the curve");
      CheckResult r = judged("moebius_invariance", worst, tol, std::to_string(flips) + " vertex flag changes");
      if (flips > 0) r.status = Status::fail;
      out.push_back(r);
    }
  }

  // The three vertex characterisations agree.
  {
    const double tol = 1e-6;
    int disagree = 0, vertices = 0;
    for (double t : grid) {
      const OsculatingSample o = osculating_circle(c, t);
      Eigen::Matrix<double, 10, 2> M;
      M << o.gamma_s, o.gamma_ss;
      const double sv = Eigen::JacobiSVD<Eigen::Matrix<double, 10, 2>>(M).singularValues()(1);
      const bool a = o.gamma_s.norm() < tol, b = std::abs(tri_square(o.gamma_ss)) < tol, r = sv < tol;
      disagree += !(a == b && b == r);
      vertices += a;
    }
    out.push_back(judged("vertex_conditions", disagree, 0.5, std::to_string(vertices) + " vertex samples"));
  }

  // Tangent criterion against the direct lightlike + Plücker test.
  {
    int disagree = 0, nulls = 0;
    const int count = 200;
    for (int k = 0; k < count; ++k) {
      const TriVector g = osculating_circle(c, grid[k % grid.size()]).gamma;
      const TangentSample s = random_tangent(g, rng);
      const bool bur = burstall_check(g, s.gamma_dot, 1e-9);
      disagree += bur != lightlike_decomposable_check(s.gamma_dot, 1e-9);
      nulls += bur;
    }
    out.push_back(judged("tangent_criterion", disagree, 0.5,
                         std::to_string(nulls) + " of " + std::to_string(count) + " tangents lightlike"));
  }

  // Inner products of the arc-length lift derivatives.
  {
    double worst = 0;
    for (double t : grid) {
      const LiftJet M = lift_jet(arclength_jet(c.jet(t)));
      const FrenetData f = frenet(c, t);
      const double F2 = f.kappa * f.kappa;
      const double F3 = F2 * F2 + vertex_quantity(f);
      const double scale = std::max(1.0, F3);
      const std::array<std::array<double, 3>, 10> table{{{0, 0, 0},
                                                         {0, 1, 0},
                                                         {0, 2, -1},
                                                         {0, 3, 0},
                                                         {0, 4, F2},
                                                         {1, 1, 1},
                                                         {1, 2, 0},
                                                         {1, 3, -F2},
                                                         {2, 2, F2},
                                                         {3, 3, F3}}};
      for (const auto& e : table) {
        const double v = lorentz(M[static_cast<int>(e[0])], M[static_cast<int>(e[1])]);
        worst = std::max(worst, std::abs(v - e[2]) / scale);
      }
    }
    out.push_back(judged("lift_identities", worst, 1e-7));
  }

  // Sphere-curve checks need a vertex-free domain.
  const SphereCurveOptions opt;
  const Interval inner{d.lo + 3 * opt.fd_step, d.hi - 3 * opt.fd_step};
  const bool sphere_ok = !domain_vertex && inner.hi > inner.lo;
  const std::string why = "osculating spheres undefined at vertices on the domain";
  if (!sphere_ok) {
    out.push_back(skipped("sphere_curve_identities", 1e-5, why));
    out.push_back(skipped("sphere_average", 1e-2, why));
    out.push_back(skipped("sphere_closure", 1e-4, why));
  } else {
    const std::vector<double> sgrid = uniform_grid(inner, cfg.samples);
    double table = 0, closure = 0;
    for (double t : sgrid) {
      const SphereSample s = sphere_sample(c, t, opt);
      const double r[] = {lorentz_square(s.sigma) - 1, lorentz(s.sigma, s.d1),     lorentz(s.sigma, s.d2) + 1,
                          lorentz(s.sigma, s.d3),      lorentz_square(s.d1) - 1,   lorentz(s.d1, s.d2),
                          lorentz(s.d1, s.d3) + 1,     lorentz_square(s.d2) - 1,   lorentz(s.d2, s.d3)};
      for (double x : r) table = std::max(table, std::abs(x));
      const double L3 = lorentz_square(s.d3);
      const double scale = std::max(1.0, std::abs(L3));
      const OsculatingSample o = osculating_circle(c, t);
      const double ds_dstilde = o.speed / s.ds_dt;
      closure = std::max(closure, std::abs(std::abs(lorentz_square(s.d1 + s.d3)) - std::abs(L3 - 1)) / scale);
      closure = std::max(closure, std::abs(tri_square(o.gamma_ss) * std::pow(ds_dstilde, 4) - (L3 - 1)) / scale);
    }
    out.push_back(judged("sphere_curve_identities", table, 1e-5));
    const AverageRecord avg = average_half_measure(c, inner.lo, inner.hi, 64);
    out.push_back(judged("sphere_average", std::abs(avg.ratio - avg.expected) / avg.expected, 1e-2,
                         "ratio " + format_double(avg.ratio)));
    out.push_back(judged("sphere_closure", closure, 1e-4));
  }

  // Disjoint sphere pairs: separation on an orthogonal circle, and the cross ratio.
  {
    double worst = 0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      const auto pair = random_disjoint_spheres(rng);
      for (int attempt = 0;; ++attempt) {
        Vec5 dir;
        for (int i = 0; i < 5; ++i) dir(i) = gauss(rng);
        try {
          const SpherePairCheck p = sphere_pair_check(pair[0], pair[1], dir);
          worst = std::max({worst, std::abs(p.separation - p.restricted_separation),
                            std::abs(p.cross_modulus - p.expected_cross)});
          break;
        } catch (const NumericalError&) {
          if (attempt > 20) throw;
        }
      }
    }
    out.push_back(judged("sphere_pair_cross_ratio", worst, 1e-6));
  }
  return out;
}

Table check_table(const std::vector<CheckResult>& results, const std::string& curve) {
  Table t;
  t.command = "check";
  t.curve = curve;
  t.columns = {"property", "status", "value", "tolerance", "detail"};
  bool ok = true;
  for (const auto& r : results) {
    t.rows.push_back({r.name, std::string(to_string(r.status)), r.value, r.tolerance, r.detail});
    ok = ok && r.status != Status::fail;
  }
  t.summary["all_passed"] = ok;
  return t;
}

}  // namespace confarc::cli
