// Convexity certification of deviatoric sections and full criteria.
//
// The certificate evaluates the exact conditions
//   g^2 + 2 g'^2 - g g'' >= 0   on every smooth piece,
//   g'(0) <= 0,  g'(pi/3) >= 0  at the section endpoints,
//   g'-(theta_i) > g'+(theta_i) at every interior corner,
//   f'' >= 0                    along the meridian,
// each reported with its signed margin (positive = satisfied with room) and
// worst location. Margins are raw condition values; the pass/fail decision
// normalizes by max(g^2, 1) so the verdict is invariant to the scale of g.
//
// Two cross-checks ship alongside: the sufficient conditions
//   -cos(theta) g g' + sin(theta) g^2 >= 0
//    cos(theta) g g' + sin(theta) (2 g'^2 - g g'') >= 0
// (which are neither necessary nor sufficient once corners appear), and a
// seeded midpoint-convexity sampling oracle over the deviatoric plane.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "criterion.hpp"
#include "deviatoric_plane.hpp"
#include "random.hpp"
#include "shapes.hpp"

namespace yieldcvx {

enum class ConditionName {
  Curvature,
  EndpointLeft,
  EndpointRight,
  CornerJump,
  MeridianSecondDerivative,
  LL1,
  LL2
};

inline std::string to_string(ConditionName n) {
  switch (n) {
    case ConditionName::Curvature: return "curvature";
    case ConditionName::EndpointLeft: return "endpoint-left";
    case ConditionName::EndpointRight: return "endpoint-right";
    case ConditionName::CornerJump: return "corner-jump";
    case ConditionName::MeridianSecondDerivative: return "meridian-f''";
    case ConditionName::LL1: return "ll1";
    case ConditionName::LL2: return "ll2";
  }
  return "?";
}

struct ConditionResult {
  ConditionName name;
  bool satisfied = true;
  double margin = 0;         ///< signed worst value; positive = satisfied with room
  double worst_location = 0; ///< theta (or p for the meridian condition)
  double breakpoint = std::numeric_limits<double>::quiet_NaN(); ///< corner-jump theta_i
};

enum class Verdict { Convex, NonConvex, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Convex: return "convex";
    case Verdict::NonConvex: return "non-convex";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct OracleWitness {
  DeviatoricPair a, b;
  double violation = 0; ///< phi(mid) - (phi(a)+phi(b))/2, positive = violation
};

struct ConvexityReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<ConditionResult> conditions;
  int grid_size = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  std::optional<OracleWitness> witness;

  const ConditionResult* find(ConditionName n) const {
    for (const auto& c : conditions)
      if (c.name == n) return &c;
    return nullptr;
  }
};

namespace detail {

/// Minimum of a sampled smooth function with one parabolic refinement around
/// the grid argmin (interior argmins only).
struct GridMin {
  double value = std::numeric_limits<double>::infinity();
  double location = 0;
};

template <typename F>
GridMin grid_minimum(F&& f, double lo, double hi, int n) {
  GridMin best;
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    vals[i] = f(t);
    if (vals[i] < best.value) {
      best.value = vals[i];
      best.location = t;
    }
  }
  // parabolic refinement when the argmin is interior
  int imin = 0;
  for (int i = 1; i < n; ++i)
    if (vals[i] < vals[imin]) imin = i;
  if (imin > 0 && imin + 1 < n) {
    const double h = (hi - lo) / (n - 1);
    const double denom = vals[imin - 1] - 2.0 * vals[imin] + vals[imin + 1];
    if (denom > 0) {
      const double shift = 0.5 * (vals[imin - 1] - vals[imin + 1]) / denom;
      if (std::abs(shift) <= 1.0) {
        const double t = best.location + shift * h;
        const double v = f(t);
        if (v < best.value) {
          best.value = v;
          best.location = t;
        }
      }
    }
  }
  return best;
}

inline bool margin_ok(double margin, double scale) {
  return margin >= -tolerances::certificate_margin * std::max(1.0, scale);
}

} // namespace detail

/// Certificate for the deviatoric section alone.
inline ConvexityReport certify_deviatoric(const DeviatoricShape& shape, int grid_n = 2048) {
  if (grid_n < 2) throw DomainError("certify_deviatoric: grid_n must be >= 2");
  ConvexityReport report;
  report.grid_size = grid_n;

  {
    ConditionResult curvature{ConditionName::Curvature};
    bool ok = true;
    detail::GridMin best;
    for (std::size_t i = 0; i < shape.piece_count(); ++i) {
      const auto& piece = shape.piece(i);
      auto value = [&](double t) {
        const double g = piece.g(t), gp = piece.dg(t), gpp = piece.d2g(t);
        return g * g + 2.0 * gp * gp - g * gpp;
      };
      const auto m = detail::grid_minimum(value, piece.lo, piece.hi, grid_n);
      if (m.value < best.value) best = m;
      const double gloc = piece.g(m.location);
      ok = ok && detail::margin_ok(m.value, gloc * gloc);
    }
    curvature.margin = best.value;
    curvature.worst_location = best.location;
    curvature.satisfied = ok;
    report.conditions.push_back(curvature);
  }

  {
    const double g0 = shape.eval(0.0);
    ConditionResult left{ConditionName::EndpointLeft};
    left.margin = -shape.derivative(0.0, Side::Right); // condition g'(0) <= 0
    left.worst_location = 0.0;
    left.satisfied = detail::margin_ok(left.margin, g0 * g0);
    report.conditions.push_back(left);

    const double g1 = shape.eval(pi_third);
    ConditionResult right{ConditionName::EndpointRight};
    right.margin = shape.derivative(pi_third, Side::Left); // condition g'(pi/3) >= 0
    right.worst_location = pi_third;
    right.satisfied = detail::margin_ok(right.margin, g1 * g1);
    report.conditions.push_back(right);
  }

  for (double b : shape.interior_breakpoints()) {
    ConditionResult jump{ConditionName::CornerJump};
    jump.breakpoint = b;
    jump.worst_location = b;
    const double gl = shape.derivative(b, Side::Left);
    const double gr = shape.derivative(b, Side::Right);
    jump.margin = gl - gr; // strict condition g'- > g'+; |jump| <= tol counts as smooth
    const double g = shape.eval(b);
    jump.satisfied = detail::margin_ok(jump.margin, g * g);
    report.conditions.push_back(jump);
  }

  bool all = true;
  for (const auto& c : report.conditions) all = all && c.satisfied;
  report.verdict = all ? Verdict::Convex : Verdict::NonConvex;
  return report;
}

/// Certificate for the full criterion: deviatoric conditions plus f'' >= 0
/// sampled on the open meridian interval (Phi in (delta, 1-delta)).
inline ConvexityReport certify_criterion(const YieldCriterion& crit, int grid_n = 2048) {
  ConvexityReport report = certify_deviatoric(crit.deviatoric, grid_n);

  ConditionResult meridian{ConditionName::MeridianSecondDerivative};
  if (crit.meridian.kind == Meridian::Kind::BP) {
    const auto& mp = crit.meridian.params;
    const double span = mp.pc + mp.c;
    const double delta = 1e-4 * span;
    auto value = [&](double p) { return f_second_derivative(p, mp); };
    const auto m = detail::grid_minimum(value, -mp.c + delta, mp.pc - delta, grid_n);
    meridian.margin = m.value;
    meridian.worst_location = m.location;
    double max_abs = std::abs(m.value);
    for (int i = 0; i < 32; ++i) {
      const double p = (-mp.c + delta) + (span - 2 * delta) * i / 31.0;
      max_abs = std::max(max_abs, std::abs(value(p)));
    }
    meridian.satisfied = detail::margin_ok(m.value, max_abs);
  } else {
    meridian.margin = 0.0; // constant meridian: f'' = 0
    meridian.worst_location = 0.0;
    meridian.satisfied = true;
  }
  report.conditions.push_back(meridian);

  bool all = true;
  for (const auto& c : report.conditions) all = all && c.satisfied;
  report.verdict = all ? Verdict::Convex : Verdict::NonConvex;
  return report;
}

/// The two sufficient conditions of the smooth-section comparison method,
/// sampled per piece. The verdict reflects these conditions only.
inline ConvexityReport laydi_lexcellent_check(const DeviatoricShape& shape, int grid_n = 2048) {
  if (grid_n < 2) throw DomainError("laydi_lexcellent_check: grid_n must be >= 2");
  ConvexityReport report;
  report.grid_size = grid_n;

  // Per-piece closed forms; both one-sided limits at breakpoints are sampled
  // because adjacent pieces share the endpoint.
  auto add = [&](ConditionName name, auto&& value_on_piece) {
    ConditionResult cond{name};
    bool ok = true;
    detail::GridMin best;
    for (std::size_t i = 0; i < shape.piece_count(); ++i) {
      const auto& piece = shape.piece(i);
      auto value = [&](double t) { return value_on_piece(piece, t); };
      const auto m = detail::grid_minimum(value, piece.lo, piece.hi, grid_n);
      if (m.value < best.value) best = m;
      const double gloc = piece.g(m.location);
      ok = ok && detail::margin_ok(m.value, gloc * gloc);
    }
    cond.margin = best.value;
    cond.worst_location = best.location;
    cond.satisfied = ok;
    report.conditions.push_back(cond);
  };

  add(ConditionName::LL1, [](const detail::ShapePiece& piece, double t) {
    const double g = piece.g(t), gp = piece.dg(t);
    return -std::cos(t) * g * gp + std::sin(t) * g * g;
  });
  add(ConditionName::LL2, [](const detail::ShapePiece& piece, double t) {
    const double g = piece.g(t), gp = piece.dg(t), gpp = piece.d2g(t);
    return std::cos(t) * g * gp + std::sin(t) * (2.0 * gp * gp - g * gpp);
  });

  bool all = true;
  for (const auto& c : report.conditions) all = all && c.satisfied;
  report.verdict = all ? Verdict::Convex : Verdict::NonConvex;
  return report;
}

/// phi = q / g(theta) extended by continuity to the origin.
inline double deviatoric_value(const DeviatoricPair& s, const DeviatoricShape& shape) {
  const double q = pair_q(s);
  if (q <= pair_hydrostatic_tolerance(s)) return 0.0;
  return q / shape.eval(pair_theta(s));
}

/// Midpoint-convexity sampling oracle. Pairs are drawn uniformly from the
/// annulus 1e-3 <= |(S1,S2)| <= 1, plus structured pairs straddling each
/// projected axis and each corner image where violations concentrate. Passing
/// yields Inconclusive (sampling cannot certify convexity); any violation
/// beyond tolerance yields NonConvex with a witness pair.
inline ConvexityReport sampling_oracle(const DeviatoricShape& shape, long long samples = 100000,
                                       std::uint64_t seed = 0) {
  ConvexityReport report;
  report.samples = samples;
  report.seed = seed;

  std::optional<OracleWitness> worst;
  auto check = [&](const DeviatoricPair& a, const DeviatoricPair& b) {
    const DeviatoricPair mid = (a + b) * 0.5;
    const double fa = deviatoric_value(a, shape);
    const double fb = deviatoric_value(b, shape);
    const double fm = deviatoric_value(mid, shape);
    const double scale = std::max({1.0, std::abs(fa), std::abs(fb), std::abs(fm)});
    const double violation = fm - 0.5 * (fa + fb);
    if (violation > 1e-9 * scale) {
      if (!worst || violation > worst->violation) worst = OracleWitness{a, b, violation};
    }
  };

  // structured pairs straddling the singular rays
  std::vector<double> rays;
  for (int j = 0; j < 6; ++j) rays.push_back(j * pi_third);
  for (double b : shape.interior_breakpoints())
    for (int j = 0; j < 3; ++j) {
      rays.push_back(b + j * 2.0 * pi_third);
      rays.push_back(-b + j * 2.0 * pi_third);
    }
  for (double psi : rays)
    for (double r : {0.25, 0.55, 0.85})
      for (double delta : {1e-3, 1e-2, 5e-2}) {
        const auto a = pair_from_xy(r * std::cos(psi - delta), r * std::sin(psi - delta));
        const auto b = pair_from_xy(r * std::cos(psi + delta), r * std::sin(psi + delta));
        check(a, b);
      }

  Rng rng(seed);
  auto draw = [&]() {
    const double r0 = 1e-3;
    const double rho = std::sqrt(rng.uniform() * (1.0 - r0 * r0) + r0 * r0);
    const double ang = rng.uniform(0.0, 2.0 * pi);
    return DeviatoricPair{rho * std::cos(ang), rho * std::sin(ang)};
  };
  for (long long i = 0; i < samples; ++i) check(draw(), draw());

  report.witness = worst;
  report.verdict = worst ? Verdict::NonConvex : Verdict::Inconclusive;
  return report;
}

struct ComparisonTable {
  std::string shape_label;
  ConvexityReport certificate;
  ConvexityReport laydi_lexcellent;
  ConvexityReport oracle;
  std::vector<std::string> flags;
  bool certificate_oracle_agree = true;
};

/// Runs the certificate, the sufficient-condition check, and the sampling
/// oracle side by side, flagging the known failure modes of the sufficient
/// conditions and any certificate/oracle disagreement.
inline ComparisonTable compare_conditions(const DeviatoricShape& shape, int grid_n = 2048,
                                          long long samples = 100000, std::uint64_t seed = 0) {
  ComparisonTable table;
  table.shape_label = shape.label();
  table.certificate = certify_deviatoric(shape, grid_n);
  table.laydi_lexcellent = laydi_lexcellent_check(shape, grid_n);
  table.oracle = sampling_oracle(shape, samples, seed);

  const bool cert_convex = table.certificate.verdict == Verdict::Convex;
  const bool ll_convex = table.laydi_lexcellent.verdict == Verdict::Convex;
  const bool oracle_violation = table.oracle.verdict == Verdict::NonConvex;

  if (cert_convex && !ll_convex)
    table.flags.push_back(
        "sufficient conditions not necessary: certificate convex, LL condition violated");
  if (!cert_convex && ll_convex)
    table.flags.push_back(
        "sufficient conditions not sufficient: certificate non-convex, LL conditions hold");
  if (cert_convex && oracle_violation) {
    table.flags.push_back("DISAGREEMENT: certificate convex but the oracle found a witness");
    table.certificate_oracle_agree = false;
  }
  if (!cert_convex && !oracle_violation) {
    table.flags.push_back("DISAGREEMENT: certificate non-convex but the oracle found no witness");
    table.certificate_oracle_agree = false;
  }
  return table;
}

} // namespace yieldcvx
