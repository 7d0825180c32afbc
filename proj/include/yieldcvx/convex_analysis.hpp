// Executable checks of the convex-analysis facts the certificate rests on:
// the ordered scalar-product bound for symmetric tensors, the ordering of
// subgradient components of isotropic convex functions, the equivalence of
// tensor-level and principal-value convexity (including the subgradient
// construction Q = sum Q_i q_i (x) q_i), and the invariance of convexity
// under the linear map from principal stresses to principal deviators.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "calculus.hpp"
#include "deviatoric_plane.hpp"
#include "random.hpp"
#include "shapes.hpp"
#include "tensor.hpp"

namespace yieldcvx {

/// Isotropic function given on principal values, with a subgradient provider
/// returning one element of the subdifferential.
struct PrincipalFunction {
  std::string name;
  std::function<double(double, double, double)> eval;
  std::function<std::array<double, 3>(double, double, double)> subgradient;
};

/// lhs = A : B, rhs = sum of products of same-order-sorted eigenvalues.
/// The bound lhs <= rhs holds for all symmetric A, B with equality when the
/// tensors are coaxial with matching eigenvalue order.
inline std::pair<double, double> ordered_product_bound(const SymmetricTensor3& a,
                                                       const SymmetricTensor3& b) {
  const double lhs = a.dot(b);
  const auto ea = principal_values(a);
  const auto eb = principal_values(b);
  return {lhs, ea[0] * eb[0] + ea[1] * eb[1] + ea[2] * eb[2]};
}

/// (Q_i - Q_j)(sigma_i - sigma_j) >= 0 for every pair, at one subgradient
/// element. Tied arguments impose no ordering.
inline bool subgradient_order_check(const PrincipalFunction& pf, double s1, double s2, double s3) {
  const auto q = pf.subgradient(s1, s2, s3);
  const std::array<double, 3> s{s1, s2, s3};
  const double scale = std::max({1.0, std::abs(s1), std::abs(s2), std::abs(s3),
                                 std::abs(q[0]), std::abs(q[1]), std::abs(q[2])});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if ((q[i] - q[j]) * (s[i] - s[j]) < -1e-10 * scale * scale) return false;
  return true;
}

enum class ConvexityStage { PrincipalMidpoint, TensorMidpoint, SubgradientInequality };

inline std::string to_string(ConvexityStage s) {
  switch (s) {
    case ConvexityStage::PrincipalMidpoint: return "principal midpoint";
    case ConvexityStage::TensorMidpoint: return "tensor midpoint";
    case ConvexityStage::SubgradientInequality: return "subgradient inequality";
  }
  return "?";
}

struct ConvexityCheckResult {
  bool passed = true;
  ConvexityStage failed_stage = ConvexityStage::PrincipalMidpoint;
  long long failed_trial = -1;
  SymmetricTensor3 witness_a, witness_b; ///< tensors of the failing pair
  double violation = 0;
};

/// Checks that phi(sigma) = pf(principal values of sigma) behaves as a convex
/// tensor function: midpoint convexity on principal triples, midpoint
/// convexity on random symmetric-tensor pairs, and the subgradient inequality
/// with Q assembled from pf's subgradient in the eigenbasis of sigma.
inline ConvexityCheckResult tensor_convexity_from_principal(const PrincipalFunction& pf,
                                                            long long trials = 10000,
                                                            std::uint64_t seed = 0) {
  Rng rng(seed);
  ConvexityCheckResult result;

  auto phi = [&](const SymmetricTensor3& t) {
    const auto v = principal_values(t);
    return pf.eval(v[0], v[1], v[2]);
  };

  // principal-triple midpoint convexity
  for (long long i = 0; i < trials; ++i) {
    std::array<double, 3> a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::array<double, 3> b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double fa = pf.eval(a[0], a[1], a[2]);
    const double fb = pf.eval(b[0], b[1], b[2]);
    const double fm = pf.eval(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2]));
    const double scale = std::max({1.0, std::abs(fa), std::abs(fb), std::abs(fm)});
    if (fm - 0.5 * (fa + fb) > 1e-9 * scale) {
      result.passed = false;
      result.failed_stage = ConvexityStage::PrincipalMidpoint;
      result.failed_trial = i;
      result.witness_a = SymmetricTensor3::diagonal(a[0], a[1], a[2]);
      result.witness_b = SymmetricTensor3::diagonal(b[0], b[1], b[2]);
      result.violation = fm - 0.5 * (fa + fb);
      return result;
    }
  }

  // tensor midpoint convexity
  for (long long i = 0; i < trials; ++i) {
    const SymmetricTensor3 a = random_symmetric(rng);
    const SymmetricTensor3 b = random_symmetric(rng);
    const double fa = phi(a), fb = phi(b), fm = phi((a + b) * 0.5);
    const double scale = std::max({1.0, std::abs(fa), std::abs(fb), std::abs(fm)});
    if (fm - 0.5 * (fa + fb) > 1e-9 * scale) {
      result.passed = false;
      result.failed_stage = ConvexityStage::TensorMidpoint;
      result.failed_trial = i;
      result.witness_a = a;
      result.witness_b = b;
      result.violation = fm - 0.5 * (fa + fb);
      return result;
    }
  }

  // subgradient inequality phi(s') - phi(s) >= Q . (s' - s), with Q built in
  // the eigenbasis of s from the principal-value subgradient
  for (long long i = 0; i < trials; ++i) {
    const SymmetricTensor3 s = random_symmetric(rng);
    const SymmetricTensor3 sp = random_symmetric(rng);
    const auto dec = principal_decomposition(s);
    const auto qcomp = pf.subgradient(dec.values[0], dec.values[1], dec.values[2]);
    SymmetricTensor3 qt = SymmetricTensor3::zero();
    for (int kdir = 0; kdir < 3; ++kdir) {
      const auto& v = dec.vectors[kdir];
      const SymmetricTensor3 outer{v[0] * v[0], v[1] * v[1], v[2] * v[2],
                                   v[0] * v[1], v[0] * v[2], v[1] * v[2]};
      qt = qt + outer * qcomp[kdir];
    }
    const double lhs = phi(sp) - phi(s);
    const double rhs = qt.dot(sp - s);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs - rhs < -1e-8 * scale) {
      result.passed = false;
      result.failed_stage = ConvexityStage::SubgradientInequality;
      result.failed_trial = i;
      result.witness_a = s;
      result.witness_b = sp;
      result.violation = rhs - lhs;
      return result;
    }
  }
  return result;
}

/// Principal deviators from principal stresses (the linear change of
/// variables whose affinity makes plane and triple convexity equivalent).
inline DeviatoricPair principal_to_deviatoric(double s1, double s2, double s3) {
  return {(2.0 * s1 - s2 - s3) / 3.0, (-s1 + 2.0 * s2 - s3) / 3.0};
}

struct LinearReductionResult {
  bool verdicts_agree = true;
  long long plane_violations = 0;
  long long triple_violations = 0;
};

/// Midpoint-convexity verdicts of phi_hat(S1, S2) and of its pullback
/// phi_tilde(s1, s2, s3) = phi_hat(S1(s), S2(s)) must agree pair by pair,
/// both on random triples (pushed forward) and on random plane pairs (lifted
/// with independent hydrostatic offsets).
inline LinearReductionResult linear_reduction_check(
    const std::function<double(DeviatoricPair)>& f_dev, long long trials = 2000,
    std::uint64_t seed = 0) {
  Rng rng(seed);
  LinearReductionResult result;
  const double tol = 1e-9;

  auto midpoint_violates = [&](double fa, double fb, double fm) {
    const double scale = std::max({1.0, std::abs(fa), std::abs(fb), std::abs(fm)});
    return fm - 0.5 * (fa + fb) > tol * scale;
  };

  for (long long i = 0; i < trials; ++i) {
    const std::array<double, 3> a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const std::array<double, 3> b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto pa = principal_to_deviatoric(a[0], a[1], a[2]);
    const auto pb = principal_to_deviatoric(b[0], b[1], b[2]);
    const bool triple_bad = midpoint_violates(
        f_dev(principal_to_deviatoric(a[0], a[1], a[2])),
        f_dev(principal_to_deviatoric(b[0], b[1], b[2])),
        f_dev(principal_to_deviatoric(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]),
                                      0.5 * (a[2] + b[2]))));
    const bool plane_bad = midpoint_violates(f_dev(pa), f_dev(pb), f_dev((pa + pb) * 0.5));
    result.triple_violations += triple_bad;
    result.plane_violations += plane_bad;
    if (triple_bad != plane_bad) result.verdicts_agree = false;
  }

  for (long long i = 0; i < trials; ++i) {
    const DeviatoricPair pa{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const DeviatoricPair pb{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double ta = rng.uniform(-1, 1), tb = rng.uniform(-1, 1); // hydrostatic offsets
    const std::array<double, 3> a{pa.s1 + ta, pa.s2 + ta, pa.s3() + ta};
    const std::array<double, 3> b{pb.s1 + tb, pb.s2 + tb, pb.s3() + tb};
    const bool plane_bad = midpoint_violates(f_dev(pa), f_dev(pb), f_dev((pa + pb) * 0.5));
    const bool triple_bad = midpoint_violates(
        f_dev(principal_to_deviatoric(a[0], a[1], a[2])),
        f_dev(principal_to_deviatoric(b[0], b[1], b[2])),
        f_dev(principal_to_deviatoric(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]),
                                      0.5 * (a[2] + b[2]))));
    result.triple_violations += triple_bad;
    result.plane_violations += plane_bad;
    if (triple_bad != plane_bad) result.verdicts_agree = false;
  }
  return result;
}

// Catalog of principal functions used by the property harnesses.

inline PrincipalFunction pf_max_eigenvalue() {
  PrincipalFunction pf;
  pf.name = "max-eigenvalue";
  pf.eval = [](double a, double b, double c) { return std::max({a, b, c}); };
  pf.subgradient = [](double a, double b, double c) -> std::array<double, 3> {
    if (a >= b && a >= c) return {1, 0, 0};
    if (b >= c) return {0, 1, 0};
    return {0, 0, 1};
  };
  return pf;
}

inline PrincipalFunction pf_half_sum_squares() {
  PrincipalFunction pf;
  pf.name = "half-sum-of-squares";
  pf.eval = [](double a, double b, double c) { return 0.5 * (a * a + b * b + c * c); };
  pf.subgradient = [](double a, double b, double c) -> std::array<double, 3> {
    return {a, b, c};
  };
  return pf;
}

inline PrincipalFunction pf_mean_pressure() {
  PrincipalFunction pf;
  pf.name = "mean-pressure";
  pf.eval = [](double a, double b, double c) { return -(a + b + c) / 3.0; };
  pf.subgradient = [](double, double, double) -> std::array<double, 3> {
    return {-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0};
  };
  return pf;
}

inline PrincipalFunction pf_determinant() {
  PrincipalFunction pf;
  pf.name = "determinant";
  pf.eval = [](double a, double b, double c) { return a * b * c; };
  pf.subgradient = [](double a, double b, double c) -> std::array<double, 3> {
    return {b * c, a * c, a * b};
  };
  return pf;
}

/// q / g(theta) written on principal values through the deviatoric pair.
/// The subgradient element is the chain-rule pullback of the plane gradient.
inline PrincipalFunction pf_deviatoric(const DeviatoricShape& shape) {
  PrincipalFunction pf;
  pf.name = "deviatoric(" + shape.label() + ")";
  pf.eval = [shape](double a, double b, double c) {
    const auto s = principal_to_deviatoric(a, b, c);
    const double q = pair_q(s);
    if (q <= pair_hydrostatic_tolerance(s)) return 0.0;
    return q / shape.eval(pair_theta(s));
  };
  pf.subgradient = [shape](double a, double b, double c) -> std::array<double, 3> {
    const auto s = principal_to_deviatoric(a, b, c);
    const auto grad = dev_gradient(s, shape); // throws on the singular loci
    return {(2.0 * grad[0] - grad[1]) / 3.0, (2.0 * grad[1] - grad[0]) / 3.0,
            (-grad[0] - grad[1]) / 3.0};
  };
  return pf;
}

} // namespace yieldcvx
