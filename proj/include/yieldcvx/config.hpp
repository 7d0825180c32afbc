// Criterion ingestion from JSON documents.
//
// Schema:
//   {
//     "meridian":   {"type": "bp", "M":..., "pc":..., "c":..., "alpha":..., "m":...}
//                 | {"type": "offset", "value":...},
//     "deviatoric": {"type": "bp", "beta":..., "gamma":...}
//                 | {"type": "constant"}
//                 | {"type": "hill1950"}
//                 | {"type": "two-piece-bp", "theta1":...}          (default 7 pi/30)
//                 | {"type": "laydi-lexcellent"}
//                 | {"type": "poly-counterexample"}
//                 | {"type": "piecewise-bp",
//                    "pieces": [{"theta_end":..., "beta":..., "gamma":...}, ...]}
//   }
// Angles accept either radians as a number or exact fraction strings such as
// "pi/3", "7pi/30", "0.5pi".
#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "criterion.hpp"
#include "errors.hpp"

namespace yieldcvx {

using nlohmann::json;

/// Angle in radians from a JSON number or a "pi"-fraction string.
inline double parse_angle(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    static const std::regex re(R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]+\.?[0-9]*))?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
      const double num = m[1].str().empty() ? 1.0 : std::stod(m[1].str());
      const double den = m[2].str().empty() ? 1.0 : std::stod(m[2].str());
      if (den == 0.0) throw ConfigError(field + ": zero denominator in angle '" + s + "'");
      return num * pi / den;
    }
    try {
      std::size_t pos = 0;
      const double plain = std::stod(s, &pos);
      if (pos == s.size()) return plain;
    } catch (...) {
    }
    throw ConfigError(field + ": cannot parse angle '" + s + "' (expected radians or 'pi/3' form)");
  }
  throw ConfigError(field + ": angle must be a number or a 'pi/3'-style string");
}

namespace detail {

inline double require_number(const json& j, const std::string& field, const std::string& ctx) {
  if (!j.contains(field)) throw ConfigError(ctx + ": missing field '" + field + "'");
  if (!j.at(field).is_number()) throw ConfigError(ctx + ": field '" + field + "' must be a number");
  return j.at(field).get<double>();
}

inline std::string require_type(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
  if (!j.contains("type")) throw ConfigError(ctx + ": missing field 'type'");
  if (!j.at("type").is_string()) throw ConfigError(ctx + ": 'type' must be a string");
  return j.at("type").get<std::string>();
}

} // namespace detail

inline Meridian meridian_from_json(const json& j) {
  const std::string type = detail::require_type(j, "meridian");
  if (type == "bp") {
    BPMeridianParams p;
    p.M = detail::require_number(j, "M", "meridian");
    p.pc = detail::require_number(j, "pc", "meridian");
    p.c = detail::require_number(j, "c", "meridian");
    p.alpha = detail::require_number(j, "alpha", "meridian");
    p.m = detail::require_number(j, "m", "meridian");
    return Meridian::bp(p); // validates ranges
  }
  if (type == "offset") return Meridian::constant_offset(detail::require_number(j, "value", "meridian"));
  throw ConfigError("meridian: unknown type '" + type + "' (expected 'bp' or 'offset')");
}

inline DeviatoricShape shape_from_json(const json& j) {
  const std::string type = detail::require_type(j, "deviatoric");
  if (type == "constant") return DeviatoricShape::constant();
  if (type == "bp")
    return DeviatoricShape::bp(detail::require_number(j, "beta", "deviatoric"),
                               detail::require_number(j, "gamma", "deviatoric"));
  if (type == "hill1950") return DeviatoricShape::hill1950();
  if (type == "two-piece-bp") {
    if (j.contains("theta1")) return DeviatoricShape::two_piece_bp(parse_angle(j.at("theta1"), "deviatoric.theta1"));
    return DeviatoricShape::two_piece_bp();
  }
  if (type == "laydi-lexcellent") return DeviatoricShape::laydi_lexcellent();
  if (type == "poly-counterexample") return DeviatoricShape::poly_counterexample();
  if (type == "piecewise-bp") {
    if (!j.contains("pieces") || !j.at("pieces").is_array() || j.at("pieces").empty())
      throw ConfigError("deviatoric: 'piecewise-bp' requires a non-empty 'pieces' array");
    std::vector<PiecewiseBPSegment> segments;
    for (const auto& piece : j.at("pieces")) {
      PiecewiseBPSegment s;
      if (!piece.contains("theta_end"))
        throw ConfigError("deviatoric.pieces: missing field 'theta_end'");
      s.theta_end = parse_angle(piece.at("theta_end"), "deviatoric.pieces.theta_end");
      s.beta = detail::require_number(piece, "beta", "deviatoric.pieces");
      s.gamma = detail::require_number(piece, "gamma", "deviatoric.pieces");
      segments.push_back(s);
    }
    return DeviatoricShape::piecewise_bp(segments);
  }
  throw ConfigError("deviatoric: unknown type '" + type + "'");
}

inline YieldCriterion criterion_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  if (!j.contains("meridian")) throw ConfigError("config: missing 'meridian'");
  if (!j.contains("deviatoric")) throw ConfigError("config: missing 'deviatoric'");
  return {meridian_from_json(j.at("meridian")), shape_from_json(j.at("deviatoric"))};
}

inline YieldCriterion load_criterion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
  }
  return criterion_from_json(j);
}

/// Shape alone (deviatoric entry of a config document).
inline DeviatoricShape load_shape(const std::string& path) {
  return load_criterion(path).deviatoric;
}

} // namespace yieldcvx
