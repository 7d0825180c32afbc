// yieldcvx command-line front end.
//
// Subcommands:
//   eval     <config> a11 a22 a33 a12 a13 a23   invariants, F, gradient/corner
//   certify  <config> [--grid N]                convexity certificate
//   compare  <config> [--samples N] [--seed S]  certificate vs LL vs oracle
//   section  <config> --kind K [--out PATH]     polyline export (csv/json)
//   catalog                                     built-in deviatoric shapes
//
// Exit codes: 0 convex/success, 1 non-convex, 2 config error, 3 domain error,
// 4 sectioning failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yieldcvx/yieldcvx.hpp"

namespace {

using namespace yieldcvx;

constexpr int exit_ok = 0;
constexpr int exit_nonconvex = 1;
constexpr int exit_config = 2;
constexpr int exit_domain = 3;
constexpr int exit_section = 4;

json eval_to_json(const StressInvariants& inv, const DeviatoricLocus& locus, double F) {
  json j;
  j["p"] = inv.p;
  j["q"] = inv.q;
  if (inv.theta)
    j["theta"] = *inv.theta;
  else
    j["theta"] = nullptr;
  j["locus"] = to_string(locus);
  if (std::isfinite(F))
    j["F"] = F;
  else
    j["F"] = "+inf";
  return j;
}

json gradient_to_json(const SymmetricTensor3& g) {
  return json{{"a11", g.a11}, {"a22", g.a22}, {"a33", g.a33},
              {"a12", g.a12}, {"a13", g.a13}, {"a23", g.a23}};
}

int cmd_eval(const std::string& config_path, const std::vector<double>& stress, bool as_json) {
  const YieldCriterion crit = load_criterion(config_path);
  SymmetricTensor3 sigma{stress[0], stress[1], stress[2], stress[3], stress[4], stress[5]};
  if (!sigma.is_finite()) throw DomainError("eval: stress components must be finite");

  const auto inv = invariants(sigma);
  DeviatoricLocus locus{LocusKind::Hydrostatic, 0};
  if (!inv.hydrostatic()) {
    const auto pv = principal_values(deviator(sigma));
    locus = classify_locus({pv[0], pv[1]});
  }
  const double F = criterion_eval(inv, crit);

  json j = eval_to_json(inv, locus, F);
  j["criterion"] = crit.label();
  std::string gradient_note;
  try {
    const auto grad = grad_F(sigma, crit);
    j["gradient"] = gradient_to_json(grad.gradient);
  } catch (const CornerError& e) {
    j["corner"] = {{"theta", e.theta}, {"left_slope", e.left_slope}, {"right_slope", e.right_slope}};
    std::ostringstream os;
    os << "corner at theta = " << format12(e.theta) << ": subgradient slope pair (g'-, g'+) = ("
       << format12(e.left_slope) << ", " << format12(e.right_slope) << ")";
    gradient_note = os.str();
  } catch (const HydrostaticError&) {
    gradient_note = "gradient undefined: hydrostatic state (theta undefined)";
  } catch (const DomainError& e) {
    gradient_note = std::string("gradient undefined: ") + e.what();
  }

  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return exit_ok;
  }
  std::cout << "criterion: " << crit.label() << "\n";
  std::cout << "p: " << format12(inv.p) << "\n";
  std::cout << "q: " << format12(inv.q) << "\n";
  if (inv.theta)
    std::cout << "theta: " << format12(*inv.theta) << "\n";
  else
    std::cout << "theta: undefined (hydrostatic)\n";
  std::cout << "locus: " << to_string(locus) << "\n";
  std::cout << "F: " << (std::isfinite(F) ? format12(F) : std::string("+inf")) << "\n";
  if (j.contains("gradient")) {
    const auto& g = j["gradient"];
    std::cout << "gradient: [" << format12(g["a11"]) << ", " << format12(g["a22"]) << ", "
              << format12(g["a33"]) << ", " << format12(g["a12"]) << ", " << format12(g["a13"])
              << ", " << format12(g["a23"]) << "] (a11 a22 a33 a12 a13 a23)\n";
  } else {
    std::cout << gradient_note << "\n";
  }
  return exit_ok;
}

int cmd_certify(const std::string& config_path, int grid, bool as_json) {
  const YieldCriterion crit = load_criterion(config_path);
  const auto report = certify_criterion(crit, grid);
  if (as_json) {
    json j = to_json(report);
    j["criterion"] = crit.label();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_report_text(report, "criterion: " + crit.label());
  }
  return report.verdict == Verdict::Convex ? exit_ok : exit_nonconvex;
}

int cmd_compare(const std::string& config_path, int grid, long long samples, std::uint64_t seed,
                bool as_json) {
  const YieldCriterion crit = load_criterion(config_path);
  const auto table = compare_conditions(crit.deviatoric, grid, samples, seed);
  if (as_json)
    std::cout << to_json(table).dump(2) << "\n";
  else
    std::cout << render_comparison_text(table);
  return table.certificate.verdict == Verdict::Convex ? exit_ok : exit_nonconvex;
}

struct SectionOptions {
  std::string kind = "deviatoric";
  std::string out;
  std::string format = "csv";
  int points = 60;
  int rays = 96;
  double theta_fixed = 0.0;
  double radius_scale = 1.0;
  double tol_root = 1e-10;
  bool normalize = false;
  std::string param_sweep;
};

SectionPolyline run_section(const YieldCriterion& crit, const SectionOptions& opt) {
  if (opt.kind == "deviatoric")
    return deviatoric_section(crit.deviatoric, opt.radius_scale, opt.points);
  if (opt.kind == "meridian") return meridian_section(crit, opt.theta_fixed, opt.points);
  if (opt.kind == "biaxial") return biaxial_section(crit, opt.rays, opt.tol_root, opt.normalize);
  throw ConfigError("section: unknown kind '" + opt.kind + "'");
}

void write_polyline(const SectionPolyline& line, const std::string& path,
                    const std::string& format) {
  std::ofstream out(path);
  if (!out) throw SectionError("section: cannot open output file '" + path + "'");
  if (format == "csv")
    write_section_csv(out, line);
  else if (format == "json")
    out << to_json(line).dump(2) << "\n";
  else
    throw ConfigError("section: unknown format '" + format + "'");
}

int cmd_section(const std::string& config_path, SectionOptions opt) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("config: cannot open '" + config_path + "'");
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  struct Variant {
    json config;
    std::string suffix;
  };
  std::vector<Variant> variants;
  if (opt.param_sweep.empty()) {
    variants.push_back({config, ""});
  } else {
    const auto eq = opt.param_sweep.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--param-sweep expects 'dotted.path=v1,v2,...'");
    const std::string path = opt.param_sweep.substr(0, eq);
    std::vector<std::string> keys;
    {
      std::stringstream ss(path);
      std::string k;
      while (std::getline(ss, k, '.')) keys.push_back(k);
    }
    if (keys.empty()) throw ConfigError("--param-sweep: empty parameter path");
    std::stringstream vs(opt.param_sweep.substr(eq + 1));
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      json variant = config;
      json* node = &variant;
      for (std::size_t i = 0; i + 1 < keys.size(); ++i) node = &((*node)[keys[i]]);
      try {
        (*node)[keys.back()] = std::stod(tok);
      } catch (...) {
        throw ConfigError("--param-sweep: cannot parse value '" + tok + "'");
      }
      variants.push_back({variant, "_" + keys.back() + tok});
    }
    if (variants.empty()) throw ConfigError("--param-sweep: no values given");
  }

  const std::string ext = opt.format == "json" ? ".json" : ".csv";
  std::string stem = opt.out.empty() ? opt.kind + "_section" : opt.out;
  for (const std::string& known : {".csv", ".json"})
    if (stem.size() > known.size() && stem.substr(stem.size() - known.size()) == known) {
      stem = stem.substr(0, stem.size() - known.size());
      break;
    }

  int worst = exit_ok;
  for (const auto& variant : variants) {
    const YieldCriterion crit = criterion_from_json(variant.config);
    const std::string path = stem + variant.suffix + ext;
    const auto line = run_section(crit, opt);
    write_polyline(line, path, opt.format);
    std::cout << "wrote " << line.points.size() << " points to " << path;
    if (line.kind == SectionKind::Biaxial) {
      if (line.ft) std::cout << "  ft=" << format12(*line.ft);
      try {
        std::cout << "  ft/fc=" << format12(ft_fc_ratio(crit));
      } catch (const NoBracketError&) {
        std::cout << "  ft/fc=n/a";
      }
    }
    std::cout << "\n";
    if (!line.warning.empty()) std::cout << "warning: " << line.warning << "\n";
    if (!line.failed_rays.empty()) {
      std::cout << "sectioning failure: no bracket on rays";
      for (int rj : line.failed_rays) std::cout << ' ' << rj;
      std::cout << " (curve left open)\n";
      worst = exit_section;
    }
  }
  return worst;
}

int cmd_catalog() {
  std::cout << "built-in deviatoric shapes:\n"
            << "  constant            von Mises circle, g = 1\n"
            << "  bp                  smooth family 1/g = cos[beta pi/6 - arccos(gamma cos 3 theta)/3],\n"
            << "                      beta in [0,2], gamma in [0,1]; gamma = 1 gives straight sides\n"
            << "  hill1950            piecewise maximum-shear section: g = sec(theta), then sec(pi/3 - theta);\n"
            << "                      corner at theta = pi/6\n"
            << "  two-piece-bp        two gamma = 1 pieces with an interior corner (default theta1 = 7 pi/30)\n"
            << "  laydi-lexcellent    1/g = 2 - cos^2(theta); reentrant corners at theta = pi/3\n"
            << "  poly-counterexample g = theta^2 - 0.8 theta^4 - theta sin(theta) + 1; non-convex yet\n"
            << "                      satisfies both smooth-sufficiency conditions\n"
            << "  piecewise-bp        bp pieces on user breakpoints, scaled for continuity\n";
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"isotropic yield criteria: evaluation, convexity certification, sections"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<double> stress;
  bool as_json = false;
  int grid = 2048;
  long long samples = 100000;
  std::uint64_t seed = 0;
  SectionOptions sopt;

  auto* eval = app.add_subcommand("eval", "invariants, F and gradient at a stress state");
  eval->add_option("config", config_path, "criterion config (JSON)")->required();
  eval->add_option("stress", stress, "a11 a22 a33 a12 a13 a23")->expected(6)->required();
  eval->add_flag("--json", as_json, "machine-readable output");

  auto* certify = app.add_subcommand("certify", "convexity certificate");
  certify->add_option("config", config_path, "criterion config (JSON)")->required();
  certify->add_option("--grid", grid, "grid points per smooth piece")->check(CLI::PositiveNumber);
  certify->add_flag("--json", as_json, "machine-readable output");

  auto* compare = app.add_subcommand("compare", "certificate vs sufficient conditions vs oracle");
  compare->add_option("config", config_path, "criterion config (JSON)")->required();
  compare->add_option("--grid", grid, "grid points per smooth piece")->check(CLI::PositiveNumber);
  compare->add_option("--samples", samples, "oracle sample pairs")->check(CLI::PositiveNumber);
  compare->add_option("--seed", seed, "oracle seed");
  compare->add_flag("--json", as_json, "machine-readable output");

  auto* section = app.add_subcommand("section", "export a yield-surface section");
  section->add_option("config", config_path, "criterion config (JSON)")->required();
  section->add_option("--kind", sopt.kind, "deviatoric | meridian | biaxial")->required();
  section->add_option("--out", sopt.out, "output path (default <kind>_section.<ext>)");
  section->add_option("--format", sopt.format, "csv | json");
  section->add_option("--points", sopt.points, "samples per sector (deviatoric) or along p (meridian)");
  section->add_option("--rays", sopt.rays, "ray count (biaxial)");
  section->add_option("--theta", sopt.theta_fixed, "fixed Lode angle (meridian)");
  section->add_option("--radius-scale", sopt.radius_scale, "polar radius scale (deviatoric)");
  section->add_option("--tol-root", sopt.tol_root, "root tolerance (biaxial)");
  section->add_flag("--normalize", sopt.normalize, "divide biaxial coordinates by ft");
  section->add_option("--param-sweep", sopt.param_sweep,
                      "sweep a config field: dotted.path=v1,v2,... (one file per value)");

  auto* catalog = app.add_subcommand("catalog", "list built-in deviatoric shapes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(config_path, stress, as_json);
    if (certify->parsed()) return cmd_certify(config_path, grid, as_json);
    if (compare->parsed()) return cmd_compare(config_path, grid, samples, seed, as_json);
    if (section->parsed()) return cmd_section(config_path, sopt);
    if (catalog->parsed()) return cmd_catalog();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const SectionError& e) {
    std::cerr << "sectioning failure: " << e.what() << "\n";
    return exit_section;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_domain;
  }
  return exit_ok;
}
