// Rendering of reports and section polylines: machine-readable JSON (stable
// key order via nlohmann's sorted maps) and aligned text tables. Section CSV
// uses 12 significant digits.
#pragma once

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "convexity.hpp"
#include "sections.hpp"

namespace yieldcvx {

/// Fixed 12-significant-digit decimal formatting for file output.
inline std::string format12(double v) {
  if (v == 0.0) return "0"; // fold the negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline json to_json(const ConditionResult& c) {
  json j{{"name", to_string(c.name)},
         {"satisfied", c.satisfied},
         {"margin", c.margin},
         {"worst_location", c.worst_location}};
  if (!std::isnan(c.breakpoint)) j["breakpoint"] = c.breakpoint;
  return j;
}

inline json to_json(const ConvexityReport& r) {
  json j{{"verdict", to_string(r.verdict)}};
  if (r.grid_size > 0) j["grid"] = r.grid_size;
  if (r.samples > 0) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
  }
  if (!r.conditions.empty()) {
    json conds = json::array();
    for (const auto& c : r.conditions) conds.push_back(to_json(c));
    j["conditions"] = conds;
  }
  if (r.witness) {
    j["witness"] = {{"a", {r.witness->a.s1, r.witness->a.s2}},
                    {"b", {r.witness->b.s1, r.witness->b.s2}},
                    {"violation", r.witness->violation}};
  }
  return j;
}

inline json to_json(const ComparisonTable& t) {
  return json{{"shape", t.shape_label},
              {"certificate", to_json(t.certificate)},
              {"laydi_lexcellent", to_json(t.laydi_lexcellent)},
              {"oracle", to_json(t.oracle)},
              {"flags", t.flags},
              {"certificate_oracle_agree", t.certificate_oracle_agree}};
}

inline std::string render_report_text(const ConvexityReport& r, const std::string& heading) {
  std::ostringstream os;
  os << heading << "\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  if (!r.conditions.empty()) {
    os << std::left << std::setw(24) << "condition" << std::setw(6) << "ok"
       << std::setw(22) << "margin" << "worst at\n";
    for (const auto& c : r.conditions) {
      std::string name = to_string(c.name);
      if (!std::isnan(c.breakpoint)) name += "(" + format12(c.breakpoint).substr(0, 8) + ")";
      os << std::left << std::setw(24) << name << std::setw(6)
         << (c.satisfied ? "yes" : "NO") << std::setw(22) << format12(c.margin)
         << format12(c.worst_location) << "\n";
    }
  }
  if (r.samples > 0)
    os << "samples: " << r.samples << "  seed: " << r.seed << "\n";
  if (r.witness)
    os << "witness: a=(" << format12(r.witness->a.s1) << ", " << format12(r.witness->a.s2)
       << ") b=(" << format12(r.witness->b.s1) << ", " << format12(r.witness->b.s2)
       << ") violation=" << format12(r.witness->violation) << "\n";
  return os.str();
}

inline std::string render_comparison_text(const ComparisonTable& t) {
  std::ostringstream os;
  os << "shape: " << t.shape_label << "\n";
  os << std::left << std::setw(22) << "method" << "verdict\n";
  os << std::left << std::setw(22) << "certificate" << to_string(t.certificate.verdict) << "\n";
  os << std::left << std::setw(22) << "laydi-lexcellent" << to_string(t.laydi_lexcellent.verdict)
     << "\n";
  os << std::left << std::setw(22) << "sampling-oracle" << to_string(t.oracle.verdict) << "\n";
  for (const auto& f : t.flags) os << "flag: " << f << "\n";
  return os.str();
}

inline void write_section_csv(std::ostream& os, const SectionPolyline& line) {
  switch (line.kind) {
    case SectionKind::Deviatoric:
      os << "theta,g,x,y\n";
      for (const auto& p : line.points)
        os << format12(p.param) << ',' << format12(p.aux) << ',' << format12(p.x) << ','
           << format12(p.y) << "\n";
      break;
    case SectionKind::Meridian:
      os << "p,q\n";
      for (const auto& p : line.points) os << format12(p.x) << ',' << format12(p.y) << "\n";
      break;
    case SectionKind::Biaxial:
      os << "ray_angle,sigma1,sigma2,normalized\n";
      for (const auto& p : line.points)
        os << format12(p.param) << ',' << format12(p.x) << ',' << format12(p.y) << ','
           << (line.normalized ? 1 : 0) << "\n";
      break;
  }
}

inline json to_json(const SectionPolyline& line) {
  json j{{"kind", to_string(line.kind)},
         {"criterion", line.criterion_id},
         {"closed", line.closed}};
  json pts = json::array();
  switch (line.kind) {
    case SectionKind::Deviatoric:
      j["columns"] = {"theta", "g", "x", "y"};
      j["radius_scale"] = line.radius_scale;
      for (const auto& p : line.points) pts.push_back({p.param, p.aux, p.x, p.y});
      break;
    case SectionKind::Meridian:
      j["columns"] = {"p", "q"};
      j["theta_fixed"] = line.theta_fixed;
      for (const auto& p : line.points) pts.push_back({p.x, p.y});
      break;
    case SectionKind::Biaxial:
      j["columns"] = {"ray_angle", "sigma1", "sigma2", "normalized"};
      j["normalized"] = line.normalized;
      if (line.ft) j["ft"] = *line.ft;
      if (!line.failed_rays.empty()) j["failed_rays"] = line.failed_rays;
      for (const auto& p : line.points) pts.push_back({p.param, p.x, p.y, line.normalized ? 1 : 0});
      break;
  }
  if (!line.warning.empty()) j["warning"] = line.warning;
  j["points"] = pts;
  return j;
}

} // namespace yieldcvx
