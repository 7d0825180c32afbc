// Yield criterion F(sigma) = f(p) + q / g(theta).
#pragma once

#include <string>

#include "meridian.hpp"
#include "shapes.hpp"
#include "tensor.hpp"

namespace yieldcvx {

struct YieldCriterion {
  Meridian meridian;
  DeviatoricShape deviatoric;

  std::string label() const { return meridian.label() + " + " + deviatoric.label(); }
};

/// F from precomputed invariants. At hydrostatic states (theta undefined) the
/// deviatoric term vanishes with q, so F reduces to f(p).
inline double criterion_eval(const StressInvariants& inv, const YieldCriterion& crit) {
  const double f = crit.meridian.eval(inv.p);
  if (inv.hydrostatic()) return f;
  return f + inv.q / crit.deviatoric.eval(*inv.theta);
}

inline double criterion_eval(const SymmetricTensor3& sigma, const YieldCriterion& crit) {
  return criterion_eval(invariants(sigma), crit);
}

} // namespace yieldcvx
