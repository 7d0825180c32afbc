// Symmetric second-order stress tensors and their isotropic invariants
// (p, q, theta), plus closed-form principal-value extraction.
//
// Conventions:
//   p = -tr(sigma)/3            (mean pressure, positive in compression)
//   q = sqrt(3 J2),   J2 = tr(S^2)/2,   S = sigma - (tr sigma / 3) I
//   theta = arccos(3 sqrt(3)/2 * J3 / J2^(3/2)) / 3,   J3 = tr(S^3)/3
// theta lives in [0, pi/3] and is undefined at hydrostatic states.
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "errors.hpp"
#include "random.hpp"

namespace yieldcvx {

namespace tolerances {
// Hydrostatic detection: theta is undefined when q <= hydrostatic_q_scale * (|sigma| + 1).
inline constexpr double hydrostatic_q_scale = 1e-12;
// The arccos argument may exceed [-1, 1] by at most this much before the
// excursion is treated as an internal inconsistency instead of round-off.
inline constexpr double arccos_clamp_window = 1e-9;
// On-axis detection: |(S1-S2)(2S1+S2)(S1+2S2)| <= axis_product_scale * q^3.
inline constexpr double axis_product_scale = 1e-9;
// Equivalent bound on |sin(3 theta)| (the product equals 2 q^3 sin(3theta) / (3 sqrt 3)).
inline constexpr double axis_sin3theta = 1.5 * 1.7320508075688772935 * axis_product_scale;
// Slope jumps not exceeding this (after scale normalization) count as smooth.
inline constexpr double derivative_jump = 1e-10;
// Margin tolerance of the convexity certificate, on scale-normalized conditions.
inline constexpr double certificate_margin = 1e-10;
} // namespace tolerances

struct SymmetricTensor3 {
  double a11 = 0, a22 = 0, a33 = 0;
  double a12 = 0, a13 = 0, a23 = 0;

  static SymmetricTensor3 diagonal(double x, double y, double z) {
    return {x, y, z, 0, 0, 0};
  }
  static SymmetricTensor3 identity() { return diagonal(1, 1, 1); }
  static SymmetricTensor3 zero() { return {}; }

  double trace() const { return a11 + a22 + a33; }

  /// Frobenius norm.
  double norm() const { return std::sqrt(dot(*this)); }

  /// Full contraction A : B including both off-diagonal triangles.
  double dot(const SymmetricTensor3& o) const {
    return a11 * o.a11 + a22 * o.a22 + a33 * o.a33 +
           2.0 * (a12 * o.a12 + a13 * o.a13 + a23 * o.a23);
  }

  /// Tensor square A*A (symmetric since A is).
  SymmetricTensor3 squared() const {
    return {a11 * a11 + a12 * a12 + a13 * a13,
            a12 * a12 + a22 * a22 + a23 * a23,
            a13 * a13 + a23 * a23 + a33 * a33,
            a11 * a12 + a12 * a22 + a13 * a23,
            a11 * a13 + a12 * a23 + a13 * a33,
            a12 * a13 + a22 * a23 + a23 * a33};
  }

  double operator()(int i, int j) const {
    static constexpr int idx[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    const double* c[6] = {&a11, &a22, &a33, &a12, &a13, &a23};
    return *c[idx[i][j]];
  }

  bool is_finite() const {
    return std::isfinite(a11) && std::isfinite(a22) && std::isfinite(a33) &&
           std::isfinite(a12) && std::isfinite(a13) && std::isfinite(a23);
  }

  SymmetricTensor3 operator+(const SymmetricTensor3& o) const {
    return {a11 + o.a11, a22 + o.a22, a33 + o.a33, a12 + o.a12, a13 + o.a13, a23 + o.a23};
  }
  SymmetricTensor3 operator-(const SymmetricTensor3& o) const {
    return {a11 - o.a11, a22 - o.a22, a33 - o.a33, a12 - o.a12, a13 - o.a13, a23 - o.a23};
  }
  SymmetricTensor3 operator*(double s) const {
    return {a11 * s, a22 * s, a33 * s, a12 * s, a13 * s, a23 * s};
  }
  friend SymmetricTensor3 operator*(double s, const SymmetricTensor3& t) { return t * s; }
};

/// R * sigma * R^T for a rotation (or any 3x3) matrix R.
inline SymmetricTensor3 rotate(const SymmetricTensor3& t, const Mat3& r) {
  double m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += r[i][k] * t(k, l) * r[j][l];
      m[i][j] = s;
    }
  return {m[0][0], m[1][1], m[2][2],
          0.5 * (m[0][1] + m[1][0]), 0.5 * (m[0][2] + m[2][0]), 0.5 * (m[1][2] + m[2][1])};
}

struct StressInvariants {
  double p = 0;                ///< mean pressure, -tr(sigma)/3
  double q = 0;                ///< Mises equivalent stress, >= 0
  std::optional<double> theta; ///< Lode angle in [0, pi/3]; empty at hydrostatic states

  bool hydrostatic() const { return !theta.has_value(); }
};

inline double hydrostatic_tolerance(const SymmetricTensor3& sigma) {
  return tolerances::hydrostatic_q_scale * (sigma.norm() + 1.0);
}

inline SymmetricTensor3 deviator(const SymmetricTensor3& sigma) {
  const double m = sigma.trace() / 3.0;
  return {sigma.a11 - m, sigma.a22 - m, sigma.a33 - m, sigma.a12, sigma.a13, sigma.a23};
}

namespace detail {

/// arccos with the round-off clamp policy: arguments within the clamp window
/// of +-1 are clamped, larger excursions are a consistency failure.
inline double checked_arccos(double x, const char* where) {
  if (x > 1.0 || x < -1.0) {
    if (std::abs(x) > 1.0 + tolerances::arccos_clamp_window) {
      std::ostringstream os;
      os << where << ": arccos argument " << x << " exceeds [-1,1] beyond round-off";
      throw InternalError(os.str());
    }
    x = x > 0 ? 1.0 : -1.0;
  }
  return std::acos(x);
}

} // namespace detail

/// Stress invariants (p, q, theta). theta is left empty when q falls below the
/// hydrostatic tolerance; this is a state flag, not a failure.
inline StressInvariants invariants(const SymmetricTensor3& sigma) {
  if (!sigma.is_finite()) throw DomainError("invariants: tensor has non-finite components");
  StressInvariants inv;
  inv.p = -sigma.trace() / 3.0;
  const SymmetricTensor3 s = deviator(sigma);
  const double j2 = 0.5 * s.dot(s);
  inv.q = std::sqrt(3.0 * j2);
  if (inv.q <= hydrostatic_tolerance(sigma)) return inv;
  const double j3 = s.squared().dot(s) / 3.0;
  const double arg = 1.5 * std::sqrt(3.0) * j3 / std::pow(j2, 1.5);
  inv.theta = detail::checked_arccos(arg, "invariants") / 3.0;
  return inv;
}

struct EigenDecomposition {
  std::array<double, 3> values;  ///< descending
  std::array<std::array<double, 3>, 3> vectors; ///< vectors[k] pairs with values[k]
};

namespace detail {

/// Cyclic Jacobi iteration for a symmetric 3x3 matrix. Robust for repeated
/// eigenvalues; used as the fallback of the closed-form path and whenever
/// eigenvectors are required.
inline EigenDecomposition jacobi_eigen(const SymmetricTensor3& t) {
  double a[3][3] = {{t.a11, t.a12, t.a13}, {t.a12, t.a22, t.a23}, {t.a13, t.a23, t.a33}};
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double thet = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double tsign = thet >= 0 ? 1.0 : -1.0;
        const double tt = tsign / (std::abs(thet) + std::sqrt(1.0 + thet * thet));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt), s = tt * c;
        const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = c * c * app - 2 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < 3; ++k) {
          if (k != p && k != q) {
            const double akp = a[k][p], akq = a[k][q];
            a[k][p] = a[p][k] = c * akp - s * akq;
            a[k][q] = a[q][k] = s * akp + c * akq;
          }
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  EigenDecomposition d;
  int order[3] = {0, 1, 2};
  for (int i = 0; i < 2; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (a[order[j]][order[j]] > a[order[i]][order[i]]) std::swap(order[i], order[j]);
  for (int k = 0; k < 3; ++k) {
    d.values[k] = a[order[k]][order[k]];
    d.vectors[k] = {v[0][order[k]], v[1][order[k]], v[2][order[k]]};
  }
  return d;
}

} // namespace detail

/// Principal values in descending order, via the trigonometric closed form.
/// Falls back to Jacobi iteration when the deviatoric discriminant is
/// degenerate (arccos argument at the edge of its domain).
inline std::array<double, 3> principal_values(const SymmetricTensor3& sigma) {
  if (!sigma.is_finite()) throw DomainError("principal_values: non-finite components");
  const double m = sigma.trace() / 3.0;
  const SymmetricTensor3 k = deviator(sigma);
  const double j2 = 0.5 * k.dot(k);
  if (j2 <= 0.0 || std::sqrt(3.0 * j2) <= hydrostatic_tolerance(sigma)) return {m, m, m};
  const double j3 = k.squared().dot(k) / 3.0;
  const double arg = 1.5 * std::sqrt(3.0) * j3 / std::pow(j2, 1.5);
  if (std::abs(arg) > 1.0 - 1e-6) {
    const auto d = detail::jacobi_eigen(sigma);
    return d.values;
  }
  const double phi = std::acos(arg) / 3.0;
  const double r = 2.0 * std::sqrt(j2 / 3.0);
  const double two_thirds_pi = 2.0943951023931954923;
  const double e1 = m + r * std::cos(phi);
  const double e3 = m + r * std::cos(phi + two_thirds_pi);
  return {e1, 3.0 * m - e1 - e3, e3};
}

/// Full eigendecomposition (descending values with matching unit eigenvectors).
inline EigenDecomposition principal_decomposition(const SymmetricTensor3& sigma) {
  if (!sigma.is_finite()) throw DomainError("principal_decomposition: non-finite components");
  return detail::jacobi_eigen(sigma);
}

/// Random symmetric tensor R diag(lambda) R^T with lambda uniform in
/// [lo, hi]^3 and R a uniformly distributed rotation. The spectrum is drawn
/// directly so that near-ties occur with realistic frequency.
inline SymmetricTensor3 random_symmetric(Rng& rng, double lo = -1.0, double hi = 1.0) {
  const SymmetricTensor3 d =
      SymmetricTensor3::diagonal(rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi));
  return rotate(d, rng.rotation());
}

} // namespace yieldcvx
