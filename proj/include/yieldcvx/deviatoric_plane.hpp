// Geometry of the deviatoric plane in the (S1, S2) chart, where S1, S2 are two
// principal deviatoric stresses and S3 = -S1 - S2. The three projected
// principal-stress axes split the plane into six open sectors on which the
// sign field H = sign[(S1-S2)(2S1+S2)(S1+2S2)] alternates.
//
// Sector convention (internal, not imposed by the math): sectors are numbered
// 1..6 counterclockwise in the isometric (x, y) embedding, starting from the
// sigma1-projection ray (theta = 0, S1 > 0). In sector 1 the polar angle of
// the embedding equals the Lode angle.
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "tensor.hpp"

namespace yieldcvx {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double pi_third = pi / 3.0;

struct DeviatoricPair {
  double s1 = 0, s2 = 0;
  double s3() const { return -s1 - s2; }

  DeviatoricPair operator+(const DeviatoricPair& o) const { return {s1 + o.s1, s2 + o.s2}; }
  DeviatoricPair operator-(const DeviatoricPair& o) const { return {s1 - o.s1, s2 - o.s2}; }
  DeviatoricPair operator*(double a) const { return {s1 * a, s2 * a}; }
  double norm() const { return std::hypot(s1, s2); }
};

enum class LocusKind { Interior, AxisThetaZero, AxisThetaPiThird, Hydrostatic };

struct DeviatoricLocus {
  LocusKind kind = LocusKind::Hydrostatic;
  int index = 0; ///< sector 1..6 for Interior, axis 1..3 for the axis kinds

  bool operator==(const DeviatoricLocus&) const = default;
  bool on_axis() const {
    return kind == LocusKind::AxisThetaZero || kind == LocusKind::AxisThetaPiThird;
  }
};

inline std::string to_string(const DeviatoricLocus& l) {
  switch (l.kind) {
    case LocusKind::Interior: return "interior(sector " + std::to_string(l.index) + ")";
    case LocusKind::AxisThetaZero: return "axis " + std::to_string(l.index) + " (theta=0)";
    case LocusKind::AxisThetaPiThird: return "axis " + std::to_string(l.index) + " (theta=pi/3)";
    case LocusKind::Hydrostatic: return "hydrostatic";
  }
  return "?";
}

// Invariants restricted to the plane: J2 = S1^2 + S1 S2 + S2^2, J3 = S1 S2 S3.
inline double pair_j2(const DeviatoricPair& s) { return s.s1 * s.s1 + s.s1 * s.s2 + s.s2 * s.s2; }
inline double pair_j3(const DeviatoricPair& s) { return s.s1 * s.s2 * s.s3(); }
inline double pair_q(const DeviatoricPair& s) { return std::sqrt(3.0 * pair_j2(s)); }

inline double pair_hydrostatic_tolerance(const DeviatoricPair& s) {
  return tolerances::hydrostatic_q_scale * (std::abs(s.s1) + std::abs(s.s2) + 1.0);
}

/// Lode angle of a plane point. Throws HydrostaticError at the origin.
inline double pair_theta(const DeviatoricPair& s) {
  const double q = pair_q(s);
  if (q <= pair_hydrostatic_tolerance(s))
    throw HydrostaticError("pair_theta: hydrostatic point, Lode angle undefined");
  const double j2 = pair_j2(s);
  const double arg = 1.5 * std::sqrt(3.0) * pair_j3(s) / std::pow(j2, 1.5);
  return detail::checked_arccos(arg, "pair_theta") / 3.0;
}

/// cos(3 theta) and sin(3 theta) without the arccos round trip. sin is the
/// nonnegative branch, consistent with theta in [0, pi/3].
inline std::array<double, 2> pair_cos_sin_3theta(const DeviatoricPair& s) {
  const double j2 = pair_j2(s);
  const double c = 1.5 * std::sqrt(3.0) * pair_j3(s) / std::pow(j2, 1.5);
  const double cc = std::min(1.0, std::max(-1.0, c));
  return {cc, std::sqrt(std::max(0.0, 1.0 - cc * cc))};
}

namespace detail {

/// The three linear forms that vanish on the projected axes:
/// axis 1: S1 + 2 S2 = 0,  axis 2: 2 S1 + S2 = 0,  axis 3: S1 - S2 = 0.
inline std::array<double, 3> axis_factors(const DeviatoricPair& s) {
  return {s.s1 + 2.0 * s.s2, 2.0 * s.s1 + s.s2, s.s1 - s.s2};
}

} // namespace detail

/// Sign of (S1-S2)(2S1+S2)(S1+2S2); +1 and -1 alternate over the six sectors.
/// Throws OnAxisError when the point is within tolerance of an axis (where the
/// sign field is discontinuous), including the hydrostatic origin.
inline int h_sign(const DeviatoricPair& s) {
  const auto f = detail::axis_factors(s);
  const double product = f[0] * f[1] * f[2];
  const double q = pair_q(s);
  if (std::abs(product) <= tolerances::axis_product_scale * q * q * q) {
    int axis = 1;
    double best = std::abs(f[0]);
    for (int i = 1; i < 3; ++i)
      if (std::abs(f[i]) < best) { best = std::abs(f[i]); axis = i + 1; }
    throw OnAxisError("h_sign: point lies on a projected principal axis", axis);
  }
  return product > 0 ? 1 : -1;
}

/// Isometric embedding of the deviatoric plane; |(x,y)| = sqrt(2/3) q.
inline std::array<double, 2> pair_to_xy(const DeviatoricPair& s) {
  return {3.0 * s.s1 / std::sqrt(6.0), (s.s1 + 2.0 * s.s2) / std::sqrt(2.0)};
}

inline DeviatoricPair pair_from_xy(double x, double y) {
  const double s1 = x * std::sqrt(6.0) / 3.0;
  return {s1, 0.5 * (std::sqrt(2.0) * y - s1)};
}

/// Exactly one locus applies to any plane point under the stated tolerances.
inline DeviatoricLocus classify_locus(const DeviatoricPair& s) {
  if (std::abs(s.s1) <= pair_hydrostatic_tolerance(s) &&
      std::abs(s.s2) <= pair_hydrostatic_tolerance(s))
    return {LocusKind::Hydrostatic, 0};
  const auto f = detail::axis_factors(s);
  const double product = f[0] * f[1] * f[2];
  const double q = pair_q(s);
  if (std::abs(product) <= tolerances::axis_product_scale * q * q * q) {
    int axis = 1;
    double best = std::abs(f[0]);
    for (int i = 1; i < 3; ++i)
      if (std::abs(f[i]) < best) { best = std::abs(f[i]); axis = i + 1; }
    // theta label from the sign of the principal component carried by the axis
    double comp = axis == 1 ? s.s1 : (axis == 2 ? s.s2 : s.s3());
    return {comp > 0 ? LocusKind::AxisThetaZero : LocusKind::AxisThetaPiThird, axis};
  }
  const auto xy = pair_to_xy(s);
  double angle = std::atan2(xy[1], xy[0]);
  if (angle < 0) angle += 2.0 * pi;
  int sector = static_cast<int>(std::floor(angle / pi_third)) + 1;
  if (sector > 6) sector = 6;
  return {LocusKind::Interior, sector};
}

/// Principal stresses (descending) with the prescribed invariants.
inline std::array<double, 3> principal_from_invariants(double p, double q, double theta) {
  if (!(q >= 0)) throw DomainError("principal_from_invariants: q must be >= 0");
  if (!(theta >= 0.0 && theta <= pi_third + 1e-12))
    throw DomainError("principal_from_invariants: theta must lie in [0, pi/3]");
  const double two_thirds_pi = 2.0 * pi / 3.0;
  const double r = 2.0 * q / 3.0;
  return {r * std::cos(theta) - p,
          r * std::cos(theta - two_thirds_pi) - p,
          r * std::cos(theta + two_thirds_pi) - p};
}

/// Plane point with the given q and Lode angle, in descending-order form
/// (sector-1 representative: embedding polar angle = theta).
inline DeviatoricPair pair_at(double q, double theta) {
  const double r = 2.0 * q / 3.0;
  return {r * std::cos(theta), r * std::cos(theta - 2.0 * pi / 3.0)};
}

} // namespace yieldcvx
