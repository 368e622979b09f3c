#pragma once

// Curve specifications as JSON:
//   {"kind":"helix","a":1.0,"b":1.0,"domain":[0.0,6.2832]}
//   {"kind":"circle","r":1.0}            {"kind":"ellipse","a":2.0,"b":1.0}
//   {"kind":"twisted_cubic","domain":[-0.5,0.5]}
//   {"kind":"polynomial","coeffs":[[...],[...],[...]]}
//   {"kind":"moebius_image","seed":7,"scale":0.5,"base":{...}}
//   {"kind":"samples","points":[[x,y,z],...],"closed":false}
// Missing domains default to [0, 2π] for periodic families and [-1, 1] otherwise.

#include <string>

#include "confarc/curve.hpp"

namespace confarc {

/// Throws InputError on malformed text or an invalid specification.
CurvePtr parse_curve_spec(const std::string& json_text);
CurvePtr load_curve_spec(const std::string& path);

}  // namespace confarc
