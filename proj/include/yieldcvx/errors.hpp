// Error types shared across the library. Recoverable conditions that callers
// are expected to branch on (corner points, axis loci, hydrostatic states) are
// modelled as exceptions carrying the data needed to recover.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace yieldcvx {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument domain (angle out of range, meridian endpoint, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Invalid or out-of-range criterion configuration.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Stress state is hydrostatic (q below tolerance): the Lode angle and the
/// deviatoric direction are undefined.
class HydrostaticError : public DomainError {
public:
  explicit HydrostaticError(const std::string& what) : DomainError(what) {}
};

/// Point lies on a projected principal-stress axis, where the sign field and
/// the Lode-angle gradient are discontinuous.
class OnAxisError : public DomainError {
public:
  OnAxisError(const std::string& what, int axis) : DomainError(what), axis(axis) {}
  int axis; // 1..3, or 0 when the locus is the hydrostatic origin
};

/// The deviatoric shape has a slope jump at the requested angle; a single
/// gradient does not exist. Carries the one-sided slopes so callers can build
/// the subgradient interval. At theta = 0 and theta = pi/3 the "other" side is
/// the even reflection of the section across the axis, so left = -right and
/// right = -left respectively.
class CornerError : public DomainError {
public:
  CornerError(const std::string& what, double theta, double left, double right)
      : DomainError(what), theta(theta), left_slope(left), right_slope(right) {}
  double theta;
  double left_slope;
  double right_slope;
};

/// Two-sided derivative requested at a point where the one-sided values differ.
class NotDifferentiableError : public DomainError {
public:
  NotDifferentiableError(const std::string& what, double theta, double left, double right)
      : DomainError(what), theta(theta), left_slope(left), right_slope(right) {}
  double theta;
  double left_slope;
  double right_slope;
};

/// One-sided slope pair requested at a point that is smooth; use the gradient.
class NotSingularError : public DomainError {
public:
  explicit NotSingularError(const std::string& what) : DomainError(what) {}
};

/// Section tracing failure (exit code 4 in the CLI).
class SectionError : public Error {
public:
  explicit SectionError(const std::string& what) : Error(what) {}
};

/// No strictly interior point with F < 0 was found to seed the ray search.
class NoInteriorPointError : public SectionError {
public:
  explicit NoInteriorPointError(const std::string& what) : SectionError(what) {}
};

/// A ray never produced a sign change within the search radius.
class NoBracketError : public SectionError {
public:
  NoBracketError(const std::string& what, std::vector<int> rays = {})
      : SectionError(what), rays(std::move(rays)) {}
  std::vector<int> rays;
};

/// Numerical inconsistency that indicates a bug rather than a bad input, e.g.
/// an arccos argument further than the round-off window from [-1, 1].
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace yieldcvx
