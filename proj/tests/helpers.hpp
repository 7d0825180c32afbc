// Shared test utilities: independent finite-difference oracles and random
// state generators. Everything here is deliberately independent of the
// closed-form implementation paths it is used to check.
#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "yieldcvx/calculus.hpp"
#include "yieldcvx/random.hpp"
#include "yieldcvx/tensor.hpp"

namespace testutil {

using yieldcvx::DeviatoricPair;
using yieldcvx::Mat3;
using yieldcvx::Rng;
using yieldcvx::SymmetricTensor3;

/// Central finite-difference gradient over the (S1, S2) plane.
inline std::array<double, 2> fd_gradient(const std::function<double(DeviatoricPair)>& f,
                                         const DeviatoricPair& s, double h) {
  return {(f({s.s1 + h, s.s2}) - f({s.s1 - h, s.s2})) / (2 * h),
          (f({s.s1, s.s2 + h}) - f({s.s1, s.s2 - h})) / (2 * h)};
}

/// Central finite-difference Hessian over the (S1, S2) plane.
inline std::array<std::array<double, 2>, 2> fd_hessian(
    const std::function<double(DeviatoricPair)>& f, const DeviatoricPair& s, double h) {
  std::array<std::array<double, 2>, 2> H;
  const double f0 = f(s);
  H[0][0] = (f({s.s1 + h, s.s2}) - 2 * f0 + f({s.s1 - h, s.s2})) / (h * h);
  H[1][1] = (f({s.s1, s.s2 + h}) - 2 * f0 + f({s.s1, s.s2 - h})) / (h * h);
  H[0][1] = H[1][0] = (f({s.s1 + h, s.s2 + h}) - f({s.s1 + h, s.s2 - h}) -
                       f({s.s1 - h, s.s2 + h}) + f({s.s1 - h, s.s2 - h})) /
                      (4 * h * h);
  return H;
}

/// Second-order one-sided derivative: (-3 f(x) + 4 f(x+h) - f(x+2h)) / (2h),
/// with h signed (negative h gives the left derivative).
inline double fd_one_sided(const std::function<double(double)>& f, double x, double h) {
  return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2 * h)) / (2.0 * h);
}

/// Symmetric finite-difference derivative of a scalar function of a tensor,
/// as a symmetric tensor (off-diagonal entries perturb both triangles).
inline SymmetricTensor3 fd_tensor_gradient(const std::function<double(SymmetricTensor3)>& f,
                                           const SymmetricTensor3& s, double h) {
  auto bump = [&](int which, double eps) {
    SymmetricTensor3 t = s;
    switch (which) {
      case 0: t.a11 += eps; break;
      case 1: t.a22 += eps; break;
      case 2: t.a33 += eps; break;
      case 3: t.a12 += eps; break;
      case 4: t.a13 += eps; break;
      case 5: t.a23 += eps; break;
    }
    return t;
  };
  double d[6];
  for (int i = 0; i < 6; ++i) d[i] = (f(bump(i, h)) - f(bump(i, -h))) / (2 * h);
  // off-diagonal components of the gradient tensor: dF/da12 covers both a12
  // and a21 slots, so the tensor component is half the partial
  return {d[0], d[1], d[2], 0.5 * d[3], 0.5 * d[4], 0.5 * d[5]};
}

/// Lode angle through the atan2 form on sorted principal deviators. Unlike
/// the arccos composition this stays fully conditioned at the axis ends, so
/// finite differences across axis points can use it as the oracle.
inline double lode_atan(const DeviatoricPair& s) {
  std::array<double, 3> v{s.s1, s.s2, s.s3()};
  std::sort(v.begin(), v.end(), std::greater<>());
  return std::atan2(std::sqrt(3.0) * (v[1] - v[2]), 2.0 * v[0] - v[1] - v[2]);
}

/// Uniform random point in the annulus r_min <= |(S1,S2)| <= r_max whose Lode
/// angle stays at least `margin` away from the axis values {0, pi/3}.
inline DeviatoricPair random_interior_pair(Rng& rng, double margin = 0.05, double r_min = 0.2,
                                           double r_max = 1.0) {
  for (;;) {
    const double rho = std::sqrt(rng.uniform(r_min * r_min, r_max * r_max));
    const double ang = rng.uniform(0.0, 2 * yieldcvx::pi);
    const DeviatoricPair s{rho * std::cos(ang), rho * std::sin(ang)};
    try {
      const double theta = yieldcvx::pair_theta(s);
      if (theta > margin && theta < yieldcvx::pi_third - margin) return s;
    } catch (const yieldcvx::DomainError&) {
    }
  }
}

/// Random interior pair whose Lode angle also avoids the given breakpoints.
inline DeviatoricPair random_smooth_pair(Rng& rng, const std::vector<double>& avoid,
                                         double margin = 0.02) {
  for (;;) {
    const DeviatoricPair s = random_interior_pair(rng, margin);
    const double theta = yieldcvx::pair_theta(s);
    bool ok = true;
    for (double b : avoid) ok = ok && std::abs(theta - b) > margin;
    if (ok) return s;
  }
}

} // namespace testutil
