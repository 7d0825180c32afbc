// Yield-surface sections for plotting: the deviatoric polar curve (six-fold
// symmetric extension of r = scale * g(theta)), the meridian graph
// q(p) = -f(p) g(theta_bar), and the biaxial sigma3 = 0 trace by ray-wise
// bracketing and bisection of F = 0.
//
// Breakpoints and sector boundaries are always inserted into the sample set:
// corners must be polyline vertices, not chords.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "criterion.hpp"
#include "deviatoric_plane.hpp"
#include "errors.hpp"

namespace yieldcvx {

enum class SectionKind { Deviatoric, Meridian, Biaxial };

inline std::string to_string(SectionKind k) {
  switch (k) {
    case SectionKind::Deviatoric: return "deviatoric";
    case SectionKind::Meridian: return "meridian";
    case SectionKind::Biaxial: return "biaxial";
  }
  return "?";
}

struct SectionPoint {
  double param = 0; ///< theta (deviatoric), p (meridian), ray angle (biaxial)
  double x = 0, y = 0;
  double aux = 0; ///< g(theta) for deviatoric sections, otherwise unused
};

struct SectionPolyline {
  SectionKind kind = SectionKind::Deviatoric;
  std::string criterion_id;
  bool closed = false;
  std::vector<SectionPoint> points;
  // kind-specific metadata
  double radius_scale = 1;          ///< deviatoric
  double theta_fixed = 0;           ///< meridian
  bool normalized = false;          ///< biaxial: coordinates divided by ft
  std::optional<double> ft;         ///< biaxial: uniaxial tensile yield, when found
  std::vector<int> failed_rays;     ///< biaxial: rays with no bracket
  std::string warning;              ///< non-fatal notes (e.g. normalization skipped)
};

/// Polar sampling of the deviatoric section. The fundamental arc
/// theta in [0, pi/3] is sampled on a uniform grid of n_per_sector + 1 points
/// united with the shape breakpoints, then extended to the full turn by the
/// alternating reflect/rotate symmetry. The polyline closes on an exact copy
/// of its first point.
inline SectionPolyline deviatoric_section(const DeviatoricShape& shape, double radius_scale = 1.0,
                                          int n_per_sector = 60) {
  if (n_per_sector < 2) throw DomainError("deviatoric_section: n_per_sector must be >= 2");
  if (!(radius_scale > 0)) throw DomainError("deviatoric_section: radius_scale must be > 0");

  std::vector<double> thetas;
  for (int i = 0; i <= n_per_sector; ++i) thetas.push_back(pi_third * i / n_per_sector);
  for (double b : shape.interior_breakpoints()) thetas.push_back(b);
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               thetas.end());

  SectionPolyline line;
  line.kind = SectionKind::Deviatoric;
  line.criterion_id = shape.label();
  line.radius_scale = radius_scale;
  line.closed = true;

  const std::size_t count = thetas.size();
  for (int sector = 0; sector < 6; ++sector) {
    const bool forward = sector % 2 == 0;
    // each sector contributes its first count-1 samples; the skipped last one
    // coincides with the next sector's first
    for (std::size_t idx = 0; idx + 1 < count; ++idx) {
      const double theta = forward ? thetas[idx] : thetas[count - 1 - idx];
      const double phi_angle =
          forward ? sector * pi_third + theta : (sector + 1) * pi_third - theta;
      const double g = shape.eval(theta);
      const double r = radius_scale * g;
      line.points.push_back({theta, r * std::cos(phi_angle), r * std::sin(phi_angle), g});
    }
  }
  line.points.push_back(line.points.front()); // close on an exact copy
  return line;
}

/// Meridian section q(p) = -f(p) g(theta_fixed) for p spanning [-c, pc].
inline SectionPolyline meridian_section(const YieldCriterion& crit, double theta_fixed,
                                        int n = 200) {
  if (crit.meridian.kind != Meridian::Kind::BP)
    throw DomainError("meridian_section: requires the pressure-sensitive meridian");
  if (!(theta_fixed >= 0.0 && theta_fixed <= pi_third + 1e-12))
    throw DomainError("meridian_section: theta_fixed must lie in [0, pi/3]");
  if (n < 2) throw DomainError("meridian_section: n must be >= 2");

  const auto& mp = crit.meridian.params;
  const double g = crit.deviatoric.eval(theta_fixed);
  SectionPolyline line;
  line.kind = SectionKind::Meridian;
  line.criterion_id = crit.label();
  line.theta_fixed = theta_fixed;
  for (int i = 0; i <= n; ++i) {
    const double p = -mp.c + (mp.pc + mp.c) * i / n;
    const double q = -f_meridian(p, mp) * g;
    line.points.push_back({p, p, q, 0});
  }
  return line;
}

namespace detail {

/// F along sigma = diag(u, v, 0).
inline double biaxial_value(double u, double v, const YieldCriterion& crit) {
  return criterion_eval(SymmetricTensor3::diagonal(u, v, 0.0), crit);
}

/// Uniaxial yield magnitude along sign * e1 (x) e1 from the unstressed state:
/// smallest t > 0 with F(diag(sign t, 0, 0)) = 0.
inline double uniaxial_yield(const YieldCriterion& crit, double sign) {
  auto value = [&](double t) { return biaxial_value(sign * t, 0.0, crit); };
  double scale = 1.0;
  if (crit.meridian.kind == Meridian::Kind::BP)
    scale = crit.meridian.params.pc + crit.meridian.params.c + 1.0;
  else
    scale = std::abs(crit.meridian.offset) + 1.0;

  // walk outward until the sign changes; F(0+) must be negative for the
  // uniaxial state to start inside the surface
  const int steps = 4096;
  const double t_max = 64.0 * scale;
  double prev_t = 1e-9 * scale;
  double prev_f = value(prev_t);
  if (!(prev_f < 0.0))
    throw NoBracketError("uniaxial yield: the unstressed state is not strictly inside F < 0");
  for (int i = 1; i <= steps; ++i) {
    const double t = t_max * i / steps;
    const double f = value(t);
    if (f >= 0.0) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) < 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_f = f;
  }
  throw NoBracketError("uniaxial yield: no sign change of F within the search radius");
}

} // namespace detail

/// Ratio of uniaxial tensile to compressive yield stress.
inline double ft_fc_ratio(const YieldCriterion& crit) {
  return detail::uniaxial_yield(crit, 1.0) / detail::uniaxial_yield(crit, -1.0);
}

/// Biaxial (sigma3 = 0) section: rays from an interior point with F < 0,
/// bracketing the first sign change and bisecting to tol_root. Infinite
/// meridian values count as positive. When normalize is set and the uniaxial
/// tensile root exists, coordinates are divided by ft; otherwise the section
/// is emitted unnormalized with a warning.
inline SectionPolyline biaxial_section(const YieldCriterion& crit, int n_rays = 96,
                                       double tol_root = 1e-10, bool normalize = false) {
  if (n_rays < 8) throw DomainError("biaxial_section: n_rays must be >= 8");
  if (!(tol_root > 0)) throw DomainError("biaxial_section: tol_root must be > 0");

  SectionPolyline line;
  line.kind = SectionKind::Biaxial;
  line.criterion_id = crit.label();

  // interior center: plane-projected mid-cap state for the pressure-sensitive
  // meridian, the origin otherwise, then a coarse grid search as fallback
  double scale = 1.0;
  std::vector<std::array<double, 2>> candidates;
  if (crit.meridian.kind == Meridian::Kind::BP) {
    const auto& mp = crit.meridian.params;
    scale = mp.pc + mp.c + 1.0;
    const double a = 0.5 * (mp.pc - mp.c);
    candidates.push_back({-a, -a});
    candidates.push_back({-0.75 * (mp.pc - mp.c), -0.75 * (mp.pc - mp.c)});
  } else {
    scale = std::abs(crit.meridian.offset) + 1.0;
    candidates.push_back({0.0, 0.0});
  }

  std::optional<std::array<double, 2>> center;
  for (const auto& cand : candidates)
    if (detail::biaxial_value(cand[0], cand[1], crit) < 0.0) {
      center = cand;
      break;
    }
  if (!center) {
    double best_f = 0.0;
    for (int ir = 0; ir < 24 && !center; ++ir)
      for (int ia = 0; ia < 48; ++ia) {
        const double r = scale * std::pow(2.0, -12.0 + ir);
        const double ang = 2.0 * pi * ia / 48;
        const double u = r * std::cos(ang), v = r * std::sin(ang);
        const double f = detail::biaxial_value(u, v, crit);
        if (f < best_f) {
          best_f = f;
          center = {{u, v}};
        }
      }
    if (!center)
      throw NoInteriorPointError("biaxial_section: no point with F < 0 found to seed the rays");
  }

  std::optional<double> ft;
  try {
    ft = detail::uniaxial_yield(crit, 1.0);
  } catch (const NoBracketError&) {
    ft.reset();
  }
  const bool do_normalize = normalize && ft.has_value();
  if (normalize && !ft)
    line.warning = "normalization skipped: uniaxial tensile root not bracketed";
  line.ft = ft;
  line.normalized = do_normalize;

  const double t_max = 64.0 * scale;
  const int steps = 2048;
  for (int j = 0; j < n_rays; ++j) {
    const double ang = 2.0 * pi * j / n_rays;
    const double cx = (*center)[0], cy = (*center)[1];
    const double dx = std::cos(ang), dy = std::sin(ang);
    auto value = [&](double t) { return detail::biaxial_value(cx + t * dx, cy + t * dy, crit); };

    double root = -1.0, prev = 0.0;
    for (int i = 1; i <= steps; ++i) {
      const double t = t_max * i / steps;
      if (value(t) >= 0.0) {
        double lo = prev, hi = t;
        for (int it = 0; it < 80 && hi - lo > tol_root * std::max(1.0, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          (value(mid) < 0.0 ? lo : hi) = mid;
        }
        root = 0.5 * (lo + hi);
        break;
      }
      prev = t;
    }
    if (root < 0.0) {
      line.failed_rays.push_back(j);
      continue;
    }
    double u = cx + root * dx, v = cy + root * dy;
    if (do_normalize) {
      u /= *ft;
      v /= *ft;
    }
    line.points.push_back({ang, u, v, 0});
  }

  line.closed = line.failed_rays.empty();
  if (line.closed && !line.points.empty()) line.points.push_back(line.points.front());
  return line;
}

} // namespace yieldcvx
