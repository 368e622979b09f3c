#pragma once

// Command implementations behind the `confarc` executable, and the seeded
// property suite run by `confarc check`.

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "confarc/curve.hpp"
#include "confarc/desitter.hpp"
#include "confarc/osculating.hpp"

namespace confarc::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::string curve_path;
  int samples = 100;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  Format format = Format::csv;
  std::string out_path;            // empty: stdout
  bool corrupt_signature = false;  // negative control for `check`
};

/// Throws InputError when samples < 8 or tol <= 0.
void validate(const RunConfig& cfg);

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::string command;
  std::string curve;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// CSV: header, rows, then one "# key=value" line per summary entry.
/// Doubles use 17 significant digits; non-finite values print as "nan" (null in JSON).
std::string render(const Table& t, Format f);

Table cmd_invariants(const Curve& c, const RunConfig& cfg);
Table cmd_halfmeasure(const Curve& c, const RunConfig& cfg);
Table cmd_angle(const Curve& c, const RunConfig& cfg);
Table cmd_sphereavg(const Curve& c, const RunConfig& cfg);
Table cmd_export_embedding(const Curve& c, const RunConfig& cfg);

enum class Status { pass, fail, skipped };
const char* to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::skipped;
  double value = 0;      // worst residual (or disagreement count)
  double tolerance = 0;
  std::string detail;
};

std::vector<CheckResult> run_checks(const CurvePtr& curve, const RunConfig& cfg);
Table check_table(const std::vector<CheckResult>& results, const std::string& curve);

// Seeded fixtures shared with the acceptance suite.

/// A tangent vector at the circle point `gamma`, drawn from a mixture of exact
/// lightlike-decomposable constructions and perturbed or generic ones.
struct TangentSample {
  TriVector gamma_dot;
  bool constructed_null = false;
};
TangentSample random_tangent(const TriVector& gamma, std::mt19937_64& rng);

/// A pair of disjoint spheres (separated or nested), oriented outward.
std::array<EuclideanSphere, 2> random_disjoint_spheres(std::mt19937_64& rng);

struct SpherePairCheck {
  double separation = 0;            // acosh |<σ1, σ2>|
  double restricted_separation = 0;  // separation of the point pairs on a common orthogonal circle
  double cross_modulus = 0;          // |cross(x11, x21; x12, x22)| with same-side labels
  double expected_cross = 0;         // ((e^ℓ - 1) / (e^ℓ + 1))^2
};
/// `direction` picks the common orthogonal circle span(σ1, σ2, direction).
SpherePairCheck sphere_pair_check(const EuclideanSphere& s1, const EuclideanSphere& s2, const Vec5& direction);

}  // namespace confarc::cli
