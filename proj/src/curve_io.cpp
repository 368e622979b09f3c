#include "confarc/curve_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "confarc/errors.hpp"
#include "confarc/spline.hpp"

namespace confarc {

namespace {

using nlohmann::json;

double number(const json& j, const char* key, double fallback, bool required) {
  if (!j.contains(key)) {
    if (required) throw InputError(std::string("curve spec: missing \"") + key + "\"");
    return fallback;
  }
  if (!j.at(key).is_number()) throw InputError(std::string("curve spec: \"") + key + "\" must be a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw InputError(std::string("curve spec: \"") + key + "\" must be finite");
  return v;
}

Interval domain(const json& j, Interval fallback) {
  if (!j.contains("domain")) return fallback;
  const json& d = j.at("domain");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number()) {
    throw InputError("curve spec: \"domain\" must be [lo, hi]");
  }
  return Interval{d[0].get<double>(), d[1].get<double>()};
}

CurvePtr build(const json& j, int depth) {
  if (depth > 4) throw InputError("curve spec: nesting too deep");
  if (!j.is_object()) throw InputError("curve spec: expected a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("curve spec: missing \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const Interval full{0.0, 2 * M_PI};
  if (kind == "helix") {
    return std::make_shared<Helix>(number(j, "a", 1, false), number(j, "b", 1, false), domain(j, full));
  }
  if (kind == "circle") return std::make_shared<CircleCurve>(number(j, "r", 1, false), domain(j, full));
  if (kind == "ellipse") {
    return std::make_shared<Ellipse>(number(j, "a", 2, false), number(j, "b", 1, false), domain(j, full));
  }
  if (kind == "twisted_cubic") return std::make_shared<TwistedCubic>(domain(j, Interval{-1, 1}));
  if (kind == "polynomial") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").size() != 3) {
      throw InputError("curve spec: \"coeffs\" must hold three coefficient lists");
    }
    std::array<std::vector<double>, 3> c;
    for (int i = 0; i < 3; ++i) {
      for (const auto& v : j.at("coeffs")[i]) {
        if (!v.is_number()) throw InputError("curve spec: coefficients must be numbers");
        c[i].push_back(v.get<double>());
      }
    }
    return std::make_shared<PolynomialCurve>(c, domain(j, Interval{-1, 1}));
  }
  if (kind == "moebius_image") {
    if (!j.contains("base")) throw InputError("curve spec: moebius_image needs \"base\"");
    const double seed = number(j, "seed", 0, true);
    if (seed < 0 || seed != std::floor(seed)) throw InputError("curve spec: \"seed\" must be a non-negative integer");
    CurvePtr base = build(j.at("base"), depth + 1);
    auto img = std::make_shared<MoebiusImage>(random_moebius(static_cast<std::uint64_t>(seed),
                                                             number(j, "scale", 0.5, false)),
                                              base);
    img->set_domain(domain(j, base->domain()));
    return img;
  }
  if (kind == "samples") {
    if (!j.contains("points") || !j.at("points").is_array()) throw InputError("curve spec: \"points\" missing");
    std::vector<Vec3> pts;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
        throw InputError("curve spec: each point must be [x, y, z]");
      }
      pts.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
    }
    bool closed = false;
    if (j.contains("closed")) {
      if (!j.at("closed").is_boolean()) throw InputError("curve spec: \"closed\" must be a boolean");
      closed = j.at("closed").get<bool>();
    }
    return std::make_shared<SampledCurve>(pts, closed, number(j, "smoothing", 1e-9, false));
  }
  throw InputError("curve spec: unknown kind \"" + kind + "\"");
}

}  // namespace

CurvePtr parse_curve_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("curve spec: malformed JSON: ") + e.what());
  }
  return build(j, 0);
}

CurvePtr load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("curve spec: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve_spec(ss.str());
}

}  // namespace confarc
