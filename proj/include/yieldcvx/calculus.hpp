// Differential structure of F(sigma) = f(p) + q/g(theta): the tensor-space
// gradient, the gradient and Hessian of q/g in the (S1, S2) plane, and the
// one-sided slopes of line restrictions at the singular loci (hydrostatic
// origin, projected axes, corner images).
#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "criterion.hpp"
#include "deviatoric_plane.hpp"
#include "shapes.hpp"
#include "tensor.hpp"

namespace yieldcvx {

struct TensorGradient {
  SymmetricTensor3 gradient;
  bool smooth = true; ///< corner states throw instead of returning, so
                      ///< successful results are smooth points of F
  DeviatoricLocus locus;
};

/// Symmetric 2x2 Hessian in the (S1, S2) chart.
struct PlaneHessian {
  double h11 = 0, h12 = 0, h22 = 0;

  std::array<double, 2> apply(const std::array<double, 2>& v) const {
    return {h11 * v[0] + h12 * v[1], h12 * v[0] + h22 * v[1]};
  }
  double quadratic_form(const std::array<double, 2>& v) const {
    return v[0] * (h11 * v[0] + h12 * v[1]) + v[1] * (h12 * v[0] + h22 * v[1]);
  }
  /// Eigenvalues, descending.
  std::array<double, 2> eigenvalues() const {
    const double tr = h11 + h22;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (h11 - h22) * (h11 - h22) + h12 * h12));
    return {0.5 * tr + disc, 0.5 * tr - disc};
  }
};

struct SlopePair {
  double left;
  double right;
  double jump() const { return right - left; }
};

namespace detail {

inline void require_interior(const DeviatoricPair& s, const char* who) {
  const auto locus = classify_locus(s);
  if (locus.kind == LocusKind::Hydrostatic)
    throw HydrostaticError(std::string(who) + ": hydrostatic point");
  if (locus.on_axis())
    throw OnAxisError(std::string(who) + ": point lies on a projected axis", locus.index);
}

/// One-sided slopes at an interior breakpoint, or nullopt when g is smooth
/// there under the jump tolerance.
inline std::optional<std::pair<double, double>> corner_slopes(const DeviatoricShape& shape,
                                                              double theta_i) {
  const double gl = shape.derivative(theta_i, Side::Left);
  const double gr = shape.derivative(theta_i, Side::Right);
  const double sc = std::max(1.0, shape.eval(theta_i) * shape.eval(theta_i));
  if (std::abs(gl - gr) > tolerances::derivative_jump * sc) return std::make_pair(gl, gr);
  return std::nullopt;
}

inline std::optional<double> breakpoint_near(const DeviatoricShape& shape, double theta,
                                             double tol = 1e-12) {
  for (double b : shape.interior_breakpoints())
    if (std::abs(theta - b) <= tol) return b;
  return std::nullopt;
}

} // namespace detail

/// Gradient of q: dq/dS_i = (3/2q) [2 S_i - (-1)^i m_i], {m} = {S2, -S1}.
inline std::array<double, 2> dq_dS(const DeviatoricPair& s) {
  const double q = pair_q(s);
  if (q <= pair_hydrostatic_tolerance(s))
    throw HydrostaticError("dq_dS: gradient of q undefined at the hydrostatic origin");
  const double c = 1.5 / q;
  return {c * (2.0 * s.s1 + s.s2), c * (2.0 * s.s2 + s.s1)};
}

/// Gradient of the Lode angle: dtheta/dS_i = -(3 sqrt3 / 2 q^2) H(S1,S2) m_i.
inline std::array<double, 2> dtheta_dS(const DeviatoricPair& s) {
  detail::require_interior(s, "dtheta_dS");
  const double q = pair_q(s);
  const double h = static_cast<double>(h_sign(s));
  const double c = -1.5 * std::sqrt(3.0) / (q * q) * h;
  return {c * s.s2, c * (-s.s1)};
}

/// Gradient of q/g(theta) at a smooth interior point.
inline std::array<double, 2> dev_gradient(const DeviatoricPair& s, const DeviatoricShape& shape) {
  detail::require_interior(s, "dev_gradient");
  const double theta = pair_theta(s);
  double gp;
  if (auto b = detail::breakpoint_near(shape, theta)) {
    if (auto corner = detail::corner_slopes(shape, *b))
      throw CornerError("dev_gradient: slope jump at a corner image", *b, corner->first,
                        corner->second);
    gp = shape.derivative(*b, Side::Right);
  } else {
    gp = shape.derivative(theta, Side::TwoSided);
  }
  const double g = shape.eval(theta);
  const auto dq = dq_dS(s);
  const auto dth = dtheta_dS(s);
  const double w = pair_q(s) * gp / (g * g);
  return {dq[0] / g - w * dth[0], dq[1] / g - w * dth[1]};
}

/// Hessian of q/g(theta): the rank-one outer-product form
///   27/4 (g^2 + 2 g'^2 - g g'') / (q^3 g^3) m_i m_j,  {m} = {S2, -S1}.
inline PlaneHessian dev_hessian(const DeviatoricPair& s, const DeviatoricShape& shape) {
  detail::require_interior(s, "dev_hessian");
  const double theta = pair_theta(s);
  if (auto b = detail::breakpoint_near(shape, theta)) {
    const double gl = shape.derivative(*b, Side::Left);
    const double gr = shape.derivative(*b, Side::Right);
    throw NotDifferentiableError("dev_hessian: theta is a piece boundary", *b, gl, gr);
  }
  const double g = shape.eval(theta);
  const double gp = shape.derivative(theta, Side::TwoSided);
  const double gpp = shape.second_derivative(theta);
  const double q = pair_q(s);
  const double factor = 6.75 * (g * g + 2.0 * gp * gp - g * gpp) / (q * q * q * g * g * g);
  const double m1 = s.s2, m2 = -s.s1;
  return {factor * m1 * m1, factor * m1 * m2, factor * m2 * m2};
}

struct IdentityResidual {
  double max_abs; ///< largest component of the assembled identity
  double scale;   ///< largest magnitude among the assembled terms
  double normalized() const { return scale > 0 ? max_abs / scale : max_abs; }
};

/// Checks dq_i dth_j + dq_j dth_i + q d2th_ij = 0 with the second derivative
/// of theta taken by finite differences (relative step, one Richardson pass),
/// independently of the closed-form Hessian simplification.
inline IdentityResidual vanishing_identity_check(const DeviatoricPair& s) {
  detail::require_interior(s, "vanishing_identity_check");
  const auto dq = dq_dS(s);
  const auto dth = dtheta_dS(s);
  const double q = pair_q(s);
  // second-difference stencil: the step balances truncation against round-off
  // at ~eps^(1/4); 1e-6 would let eps/h^2 noise dominate the 1e-5 contract
  const double h = 1e-4 * s.norm();

  auto theta_at = [](const DeviatoricPair& p) { return pair_theta(p); };
  auto d2_fd = [&](double step) {
    std::array<std::array<double, 2>, 2> d{};
    const double t0 = theta_at(s);
    const DeviatoricPair e1{step, 0}, e2{0, step};
    d[0][0] = (theta_at(s + e1) - 2.0 * t0 + theta_at(s - e1)) / (step * step);
    d[1][1] = (theta_at(s + e2) - 2.0 * t0 + theta_at(s - e2)) / (step * step);
    d[0][1] = d[1][0] = (theta_at(s + e1 + e2) - theta_at(s + e1 - e2) -
                         theta_at(s - e1 + e2) + theta_at(s - e1 - e2)) /
                        (4.0 * step * step);
    return d;
  };
  const auto dh = d2_fd(h), dh2 = d2_fd(0.5 * h);

  IdentityResidual r{0, 0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double d2 = (4.0 * dh2[i][j] - dh[i][j]) / 3.0;
      const double lhs = dq[i] * dth[j] + dq[j] * dth[i] + q * d2;
      const double scale = std::abs(dq[i] * dth[j]) + std::abs(dq[j] * dth[i]) + std::abs(q * d2);
      r.max_abs = std::max(r.max_abs, std::abs(lhs));
      r.scale = std::max(r.scale, scale);
    }
  return r;
}

namespace detail {

/// Unit tensor along d theta / d sigma (scaled):
///   S_perp = -(3 sqrt3 / (sqrt2 q^2 sin 3theta)) [S^2 - (2/9) q^2 I - (q/3) cos3theta S].
inline SymmetricTensor3 lode_tangent(const SymmetricTensor3& s, double q, double cos3t,
                                     double sin3t) {
  const SymmetricTensor3 bracket =
      s.squared() - SymmetricTensor3::identity() * (2.0 / 9.0 * q * q) - s * (q / 3.0 * cos3t);
  const double c = -3.0 * std::sqrt(3.0) / (std::sqrt(2.0) * q * q * sin3t);
  return bracket * c;
}

} // namespace detail

/// Gradient of F in stress space,
///   dF/dsigma = -(1/3) f'(p) I + sqrt(3/2) (1/g) S~  - sqrt(3/2) (g'/g^2) S~perp.
/// Corner states (slope jump at the Lode angle of sigma) throw CornerError with
/// the one-sided slope pair; hydrostatic states throw HydrostaticError.
inline TensorGradient grad_F(const SymmetricTensor3& sigma, const YieldCriterion& crit) {
  const auto inv = invariants(sigma);
  if (inv.hydrostatic())
    throw HydrostaticError("grad_F: gradient undefined on the hydrostatic axis");
  const double fp = crit.meridian.derivative(inv.p);
  const SymmetricTensor3 s = deviator(sigma);
  const double q = inv.q;
  const double theta = *inv.theta;
  const auto& shape = crit.deviatoric;

  const auto pv = principal_values(s);
  const DeviatoricPair pair{pv[0], pv[1]};
  const DeviatoricLocus locus = classify_locus(pair);

  const SymmetricTensor3 spherical = SymmetricTensor3::identity() * (-fp / 3.0);

  if (locus.kind == LocusKind::AxisThetaZero) {
    const double gp = shape.derivative(0.0, Side::Right);
    const double g0 = shape.eval(0.0);
    if (std::abs(gp) > tolerances::derivative_jump * std::max(1.0, g0 * g0))
      throw CornerError("grad_F: deviatoric corner at theta = 0", 0.0, -gp, gp);
    return {spherical + s * (1.5 / (q * g0)), true, locus};
  }
  if (locus.kind == LocusKind::AxisThetaPiThird) {
    const double gm = shape.derivative(pi_third, Side::Left);
    const double g1 = shape.eval(pi_third);
    if (std::abs(gm) > tolerances::derivative_jump * std::max(1.0, g1 * g1))
      throw CornerError("grad_F: deviatoric corner at theta = pi/3", pi_third, gm, -gm);
    return {spherical + s * (1.5 / (q * g1)), true, locus};
  }

  double gp;
  if (auto b = detail::breakpoint_near(shape, theta)) {
    if (auto corner = detail::corner_slopes(shape, *b))
      throw CornerError("grad_F: deviatoric corner at an interior breakpoint", *b, corner->first,
                        corner->second);
    gp = shape.derivative(*b, Side::Right);
  } else {
    gp = shape.derivative(theta, Side::TwoSided);
  }
  const double g = shape.eval(theta);
  const SymmetricTensor3 sperp =
      detail::lode_tangent(s, q, std::cos(3.0 * theta), std::sin(3.0 * theta));
  const SymmetricTensor3 grad =
      spherical + s * (1.5 / (q * g)) - sperp * (std::sqrt(1.5) * gp / (g * g));
  return {grad, true, locus};
}

/// One-sided derivatives of the restriction h(eps) of q/g(theta) to the line
/// {point + eps (1, k)} at eps = 0, for points on the singular loci:
///   - hydrostatic origin: +-sqrt(3) sqrt(1+k+k^2) / g(theta of each ray),
///   - axis points: the endpoint-slope closed forms with the side-dependent
///     sign of the Lode-angle gradient,
///   - interior corner images: one-sided g' chosen by the side from which the
///     line meets the breakpoint.
/// Smooth interior points throw NotSingularError (the gradient applies there).
inline SlopePair line_restriction_slopes(const DeviatoricPair& point, double k,
                                         const DeviatoricShape& shape) {
  const DeviatoricLocus locus = classify_locus(point);
  const std::array<double, 2> d{1.0, k};

  if (locus.kind == LocusKind::Hydrostatic) {
    const double theta_plus = pair_theta({1.0, k});
    const double theta_minus = pi_third - theta_plus;
    const double mag = std::sqrt(3.0) * std::sqrt(1.0 + k + k * k);
    return {-mag / shape.eval(theta_minus), mag / shape.eval(theta_plus)};
  }

  if (locus.on_axis()) {
    const double q = pair_q(point);
    const auto f = detail::axis_factors(point);
    static constexpr double grads[3][2] = {{1, 2}, {2, 1}, {1, -1}};
    const int a = locus.index - 1;
    const double dfd = grads[a][0] * d[0] + grads[a][1] * d[1];
    const double other = f[(a + 1) % 3] * f[(a + 2) % 3];
    const double h_plus = (dfd >= 0 ? 1.0 : -1.0) * (other >= 0 ? 1.0 : -1.0);

    const bool at_zero = locus.kind == LocusKind::AxisThetaZero;
    const double theta_end = at_zero ? 0.0 : pi_third;
    const double g = shape.eval(theta_end);
    const double gp =
        at_zero ? shape.derivative(0.0, Side::Right) : shape.derivative(pi_third, Side::Left);
    const auto dq = dq_dS(point);
    const double dq_d = dq[0] * d[0] + dq[1] * d[1];
    const double md = point.s2 * d[0] - point.s1 * d[1];
    auto slope = [&](double h) {
      const double dth_d = -1.5 * std::sqrt(3.0) / (q * q) * h * md;
      return dq_d / g - q * gp / (g * g) * dth_d;
    };
    return {slope(-h_plus), slope(h_plus)};
  }

  const double theta = pair_theta(point);
  const auto b = detail::breakpoint_near(shape, theta, 1e-9);
  if (!b)
    throw NotSingularError(
        "line_restriction_slopes: smooth interior point, use dev_gradient instead");

  const double q = pair_q(point);
  const auto dq = dq_dS(point);
  const auto dth = dtheta_dS(point);
  const double dq_d = dq[0] * d[0] + dq[1] * d[1];
  const double gdot = dth[0] * d[0] + dth[1] * d[1]; // d theta / d eps
  const double g = shape.eval(*b);
  const double gl = shape.derivative(*b, Side::Left);
  const double gr = shape.derivative(*b, Side::Right);
  // For eps > 0 the angle moves toward the side sign(gdot); the matching
  // one-sided slope of g applies there, the opposite one for eps < 0.
  const double g_plus = gdot >= 0 ? gr : gl;
  const double g_minus = gdot >= 0 ? gl : gr;
  auto slope = [&](double gp) { return dq_d / g - q * gp / (g * g) * gdot; };
  return {slope(g_minus), slope(g_plus)};
}

} // namespace yieldcvx
