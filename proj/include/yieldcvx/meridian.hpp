// Meridian functions f(p). The pressure-sensitive cap takes the value +inf
// outside its support [-c, pc]; IEEE infinity is used as that value, so the
// infinite branch propagates through sums without special cases.
#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace yieldcvx {

struct BPMeridianParams {
  double M;     ///< > 0, pressure sensitivity
  double pc;    ///< > 0, compaction pressure
  double c;     ///< >= 0, cohesion pressure
  double alpha; ///< in (0, 2)
  double m;     ///< > 1

  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    std::ostringstream os;
    if (!(M > 0.0)) { os << "M must be > 0 (got " << M << ")"; fail(os.str()); }
    if (!(pc > 0.0)) { os << "pc must be > 0 (got " << pc << ")"; fail(os.str()); }
    if (!(c >= 0.0)) { os << "c must be >= 0 (got " << c << ")"; fail(os.str()); }
    if (!(alpha > 0.0 && alpha < 2.0)) { os << "alpha must lie in (0,2) (got " << alpha << ")"; fail(os.str()); }
    if (!(m > 1.0)) { os << "m must be > 1 (got " << m << ")"; fail(os.str()); }
  }
};

/// Normalized pressure: Phi = (p + c) / (pc + c).
inline double phi(double p, const BPMeridianParams& params) {
  return (p + params.c) / (params.pc + params.c);
}

/// f(p) = -M pc sqrt((Phi - Phi^m)(2(1-alpha)Phi + alpha)) for Phi in [0,1],
/// +inf otherwise. The radicand is clamped at zero: it is nonnegative in exact
/// arithmetic on the finite branch, so only round-off can drive it below.
inline double f_meridian(double p, const BPMeridianParams& params) {
  const double ph = phi(p, params);
  if (ph < 0.0 || ph > 1.0) return std::numeric_limits<double>::infinity();
  const double a = ph - std::pow(ph, params.m);
  const double b = 2.0 * (1.0 - params.alpha) * ph + params.alpha;
  return -params.M * params.pc * std::sqrt(std::max(0.0, a * b));
}

/// df/dp on the open interval Phi in (0, 1); the derivative blows up at the
/// endpoints, so they are excluded.
inline double f_meridian_derivative(double p, const BPMeridianParams& params) {
  const double ph = phi(p, params);
  if (!(ph > 0.0 && ph < 1.0))
    throw DomainError("f': p is at or outside the meridian endpoints (Phi not in (0,1))");
  const double a = ph - std::pow(ph, params.m);
  const double b = 2.0 * (1.0 - params.alpha) * ph + params.alpha;
  const double da = 1.0 - params.m * std::pow(ph, params.m - 1.0);
  const double db = 2.0 * (1.0 - params.alpha);
  const double dphi = 1.0 / (params.pc + params.c);
  return -params.M * params.pc * (da * b + a * db) * dphi / (2.0 * std::sqrt(a * b));
}

/// d2f/dp2 by a central finite difference with step h = 1e-5 (pc + c) and one
/// Richardson extrapolation. Requires the whole stencil inside the support.
inline double f_second_derivative(double p, const BPMeridianParams& params) {
  const double ph = phi(p, params);
  if (!(ph > 0.0 && ph < 1.0))
    throw DomainError("f'': p is at or outside the meridian endpoints (Phi not in (0,1))");
  const double h = 1e-5 * (params.pc + params.c);
  if (!(p - h > -params.c && p + h < params.pc))
    throw DomainError("f'': finite-difference stencil leaves the meridian support");
  auto d2 = [&](double step) {
    return (f_meridian(p - step, params) - 2.0 * f_meridian(p, params) +
            f_meridian(p + step, params)) / (step * step);
  };
  const double dh = d2(h), dh2 = d2(0.5 * h);
  return (4.0 * dh2 - dh) / 3.0;
}

/// Meridian variant: the BP cap or a constant offset (f identically equal to
/// a fixed value, as in F = -fc/g(pi/3) + q/g(theta)).
struct Meridian {
  enum class Kind { BP, ConstantOffset };
  Kind kind = Kind::ConstantOffset;
  BPMeridianParams params{1, 1, 0, 1, 2};
  double offset = -1.0;

  static Meridian bp(const BPMeridianParams& p) {
    p.validate();
    Meridian m;
    m.kind = Kind::BP;
    m.params = p;
    return m;
  }
  static Meridian constant_offset(double value) {
    if (!std::isfinite(value)) throw ConfigError("offset meridian: value must be finite");
    Meridian m;
    m.kind = Kind::ConstantOffset;
    m.offset = value;
    return m;
  }

  double eval(double p) const {
    return kind == Kind::BP ? f_meridian(p, params) : offset;
  }
  double derivative(double p) const {
    return kind == Kind::BP ? f_meridian_derivative(p, params) : 0.0;
  }

  std::string label() const {
    if (kind == Kind::ConstantOffset) {
      std::ostringstream os;
      os << "offset(" << offset << ")";
      return os.str();
    }
    std::ostringstream os;
    os << "bp(M=" << params.M << ",pc=" << params.pc << ",c=" << params.c
       << ",alpha=" << params.alpha << ",m=" << params.m << ")";
    return os.str();
  }
};

} // namespace yieldcvx
