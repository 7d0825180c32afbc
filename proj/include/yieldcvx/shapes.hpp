// Deviatoric shape functions g(theta) on [0, pi/3]: piecewise-smooth, strictly
// positive, with closed-form first and second derivatives per piece. Closed
// forms (not finite differences) are used throughout so that certificate
// margins are not polluted by differencing noise.
//
// Catalog:
//   constant             g = 1 (von Mises circle)
//   bp(beta, gamma)      1/g = cos[beta pi/6 - arccos(gamma cos 3theta)/3]
//   hill1950             g = sec(theta) on [0,pi/6], sec(pi/3 - theta) after
//   two_piece_bp(t1)     two gamma=1 pieces with an interior corner at t1,
//                        each normalized to g(t1) = 1
//   laydi_lexcellent     g = 1/(2 - cos^2 theta)
//   poly_counterexample  g = theta^2 - 0.8 theta^4 - theta sin theta + 1
//   piecewise_bp(...)    bp pieces on user breakpoints, scaled for continuity
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "deviatoric_plane.hpp"
#include "errors.hpp"

namespace yieldcvx {

enum class ShapeTag { Constant, BP, Hill1950, TwoPieceBP, LaydiLexcellent, PolyCounterexample, PiecewiseBP };

enum class Side { Left, Right, TwoSided };

struct PiecewiseBPSegment {
  double theta_end; ///< right end of the segment; the last must be pi/3
  double beta;
  double gamma;
};

namespace detail {

enum class PieceForm { Constant, BP, BPUnitGamma, InverseQuadCos, QuarticPoly };

struct ShapePiece {
  PieceForm form = PieceForm::Constant;
  double lo = 0, hi = pi_third;
  double beta = 0, gamma = 0;
  double scale = 1.0;

  double g(double t) const {
    switch (form) {
      case PieceForm::Constant: return scale;
      case PieceForm::BP: return scale / std::cos(angle_arg(t));
      case PieceForm::BPUnitGamma: return scale / std::cos(beta * pi / 6.0 - t);
      case PieceForm::InverseQuadCos: {
        const double c = std::cos(t);
        return scale / (2.0 - c * c);
      }
      case PieceForm::QuarticPoly: {
        const double t2 = t * t;
        return scale * (t2 - 0.8 * t2 * t2 - t * std::sin(t) + 1.0);
      }
    }
    return scale;
  }

  double dg(double t) const {
    switch (form) {
      case PieceForm::Constant: return 0.0;
      case PieceForm::BP: {
        const double u = angle_arg(t);
        return scale * (std::sin(u) / (std::cos(u) * std::cos(u))) * du(t);
      }
      case PieceForm::BPUnitGamma: {
        const double u = beta * pi / 6.0 - t;
        return -scale * std::sin(u) / (std::cos(u) * std::cos(u));
      }
      case PieceForm::InverseQuadCos: {
        const double d = 2.0 - std::cos(t) * std::cos(t);
        return -scale * std::sin(2.0 * t) / (d * d);
      }
      case PieceForm::QuarticPoly:
        return scale * (2.0 * t - 3.2 * t * t * t - std::sin(t) - t * std::cos(t));
    }
    return 0.0;
  }

  double d2g(double t) const {
    switch (form) {
      case PieceForm::Constant: return 0.0;
      case PieceForm::BP: {
        const double u = angle_arg(t);
        const double sec = 1.0 / std::cos(u), tan = std::tan(u);
        const double u1 = du(t), u2 = d2u(t);
        return scale * (sec * (tan * tan + sec * sec) * u1 * u1 + sec * tan * u2);
      }
      case PieceForm::BPUnitGamma: {
        const double u = beta * pi / 6.0 - t;
        const double sec = 1.0 / std::cos(u), tan = std::tan(u);
        return scale * sec * (tan * tan + sec * sec);
      }
      case PieceForm::InverseQuadCos: {
        const double d = 2.0 - std::cos(t) * std::cos(t);
        const double s2 = std::sin(2.0 * t);
        return scale * (-2.0 * std::cos(2.0 * t) / (d * d) + 2.0 * s2 * s2 / (d * d * d));
      }
      case PieceForm::QuarticPoly:
        return scale * (2.0 - 9.6 * t * t - 2.0 * std::cos(t) + t * std::sin(t));
    }
    return 0.0;
  }

private:
  // u(theta) = beta pi/6 - arccos(gamma cos 3theta)/3 and its derivatives.
  double angle_arg(double t) const {
    return beta * pi / 6.0 - std::acos(gamma * std::cos(3.0 * t)) / 3.0;
  }
  double du(double t) const {
    const double w = 1.0 - gamma * gamma * std::cos(3.0 * t) * std::cos(3.0 * t);
    return -gamma * std::sin(3.0 * t) / std::sqrt(w);
  }
  double d2u(double t) const {
    const double w = 1.0 - gamma * gamma * std::cos(3.0 * t) * std::cos(3.0 * t);
    return -3.0 * gamma * std::cos(3.0 * t) * (1.0 - gamma * gamma) / (w * std::sqrt(w));
  }
};

} // namespace detail

class DeviatoricShape {
public:
  static DeviatoricShape constant() {
    DeviatoricShape s;
    s.tag_ = ShapeTag::Constant;
    s.label_ = "constant";
    s.pieces_ = {detail::ShapePiece{}};
    s.finalize();
    return s;
  }

  static DeviatoricShape bp(double beta, double gamma) {
    validate_bp_params(beta, gamma);
    DeviatoricShape s;
    s.tag_ = ShapeTag::BP;
    std::ostringstream os;
    os << "bp(beta=" << beta << ",gamma=" << gamma << ")";
    s.label_ = os.str();
    s.pieces_ = {bp_piece(0.0, pi_third, beta, gamma, 1.0)};
    s.finalize();
    return s;
  }

  static DeviatoricShape hill1950() {
    DeviatoricShape s;
    s.tag_ = ShapeTag::Hill1950;
    s.label_ = "hill1950";
    s.pieces_ = {bp_piece(0.0, pi / 6.0, 0.0, 1.0, 1.0),
                 bp_piece(pi / 6.0, pi_third, 2.0, 1.0, 1.0)};
    s.finalize();
    return s;
  }

  static DeviatoricShape two_piece_bp(double theta1 = 7.0 * pi / 30.0) {
    if (!(theta1 > 0.0 && theta1 < pi_third))
      throw ConfigError("two-piece-bp: theta1 must lie strictly inside (0, pi/3)");
    DeviatoricShape s;
    s.tag_ = ShapeTag::TwoPieceBP;
    std::ostringstream os;
    os << "two-piece-bp(theta1=" << theta1 << ")";
    s.label_ = os.str();
    s.theta1_ = theta1;
    // Each piece is scaled so that g(theta1) = 1 from both sides.
    const double c1 = std::cos(pi / 12.0 - theta1);
    const double c2 = std::cos(pi / 4.0 - theta1);
    s.pieces_ = {bp_piece(0.0, theta1, 0.5, 1.0, c1),
                 bp_piece(theta1, pi_third, 1.5, 1.0, c2)};
    s.finalize();
    return s;
  }

  static DeviatoricShape laydi_lexcellent() {
    DeviatoricShape s;
    s.tag_ = ShapeTag::LaydiLexcellent;
    s.label_ = "laydi-lexcellent";
    detail::ShapePiece p;
    p.form = detail::PieceForm::InverseQuadCos;
    s.pieces_ = {p};
    s.finalize();
    return s;
  }

  static DeviatoricShape poly_counterexample() {
    DeviatoricShape s;
    s.tag_ = ShapeTag::PolyCounterexample;
    s.label_ = "poly-counterexample";
    detail::ShapePiece p;
    p.form = detail::PieceForm::QuarticPoly;
    s.pieces_ = {p};
    s.finalize();
    return s;
  }

  /// BP pieces on user breakpoints, each scaled multiplicatively so the shape
  /// is continuous (first piece has unit scale).
  static DeviatoricShape piecewise_bp(const std::vector<PiecewiseBPSegment>& segments) {
    if (segments.empty()) throw ConfigError("piecewise-bp: at least one piece required");
    DeviatoricShape s;
    s.tag_ = ShapeTag::PiecewiseBP;
    s.segments_ = segments;
    std::ostringstream os;
    os << "piecewise-bp(" << segments.size() << " pieces)";
    s.label_ = os.str();
    double lo = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const auto& seg = segments[i];
      validate_bp_params(seg.beta, seg.gamma);
      const bool last = i + 1 == segments.size();
      const double hi = last ? pi_third : seg.theta_end;
      if (!(hi > lo + 1e-12))
        throw ConfigError("piecewise-bp: theta_end values must be strictly increasing");
      if (!last && !(hi < pi_third - 1e-12))
        throw ConfigError("piecewise-bp: interior theta_end must be < pi/3");
      if (last && std::abs(seg.theta_end - pi_third) > 1e-9)
        throw ConfigError("piecewise-bp: the last theta_end must equal pi/3");
      auto piece = bp_piece(lo, hi, seg.beta, seg.gamma, 1.0);
      if (i > 0) {
        const double left_val = s.pieces_.back().g(lo);
        scale = left_val / piece.g(lo);
      }
      piece.scale = scale;
      s.pieces_.push_back(piece);
      lo = hi;
    }
    s.finalize();
    return s;
  }

  ShapeTag tag() const { return tag_; }
  const std::string& label() const { return label_; }
  double corner_theta1() const { return theta1_; }
  const std::vector<PiecewiseBPSegment>& segments() const { return segments_; }

  /// All breakpoints including the domain ends 0 and pi/3.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  std::vector<double> interior_breakpoints() const {
    return {breakpoints_.begin() + 1, breakpoints_.end() - 1};
  }

  std::size_t piece_count() const { return pieces_.size(); }
  const detail::ShapePiece& piece(std::size_t i) const { return pieces_[i]; }

  bool is_breakpoint(double theta, double tol = 1e-12) const {
    for (double b : breakpoints_)
      if (std::abs(theta - b) <= tol) return true;
    return false;
  }

  double operator()(double theta) const { return eval(theta); }

  double eval(double theta) const {
    check_domain(theta, "g");
    return pieces_[piece_index(theta)].g(clamp(theta));
  }

  /// One-sided or two-sided slope. TwoSided throws NotDifferentiableError at
  /// interior breakpoints where the one-sided values differ beyond tolerance;
  /// at the domain ends it returns the only existing side.
  double derivative(double theta, Side side = Side::TwoSided) const {
    check_domain(theta, "g'");
    const double t = clamp(theta);
    switch (side) {
      case Side::Left: {
        if (t <= breakpoints_.front() + 1e-12)
          throw DomainError("g': left derivative requires theta > 0");
        return pieces_[piece_index_left(t)].dg(t);
      }
      case Side::Right: {
        if (t >= breakpoints_.back() - 1e-12)
          throw DomainError("g': right derivative requires theta < pi/3");
        return pieces_[piece_index_right(t)].dg(t);
      }
      case Side::TwoSided: {
        if (t <= breakpoints_.front() + 1e-12) return pieces_.front().dg(breakpoints_.front());
        if (t >= breakpoints_.back() - 1e-12) return pieces_.back().dg(breakpoints_.back());
        const double dl = pieces_[piece_index_left(t)].dg(t);
        const double dr = pieces_[piece_index_right(t)].dg(t);
        const double sc = std::max(1.0, eval(t) * eval(t));
        if (std::abs(dl - dr) > tolerances::derivative_jump * sc)
          throw NotDifferentiableError("g': one-sided slopes differ at a breakpoint", t, dl, dr);
        return dr;
      }
    }
    return 0.0;
  }

  /// Closed-form second derivative; requires theta strictly inside a piece.
  double second_derivative(double theta) const {
    check_domain(theta, "g''");
    const double t = clamp(theta);
    for (double b : breakpoints_)
      if (std::abs(t - b) <= 1e-12) {
        const double dl = t > breakpoints_.front() + 1e-12 ? pieces_[piece_index_left(t)].dg(t) : 0.0;
        const double dr = t < breakpoints_.back() - 1e-12 ? pieces_[piece_index_right(t)].dg(t) : 0.0;
        throw NotDifferentiableError("g'': theta is a piece boundary", t, dl, dr);
      }
    return pieces_[piece_index(t)].d2g(t);
  }

  /// Index of the piece whose closed interval contains theta (right-continuous
  /// at interior breakpoints).
  std::size_t piece_index(double theta) const {
    const double t = clamp(theta);
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
      if (t < pieces_[i].hi) return i;
    return pieces_.size() - 1;
  }

private:
  static void validate_bp_params(double beta, double gamma) {
    if (!(beta >= 0.0 && beta <= 2.0)) {
      std::ostringstream os;
      os << "beta must lie in [0,2] (got " << beta << ")";
      throw ConfigError(os.str());
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      std::ostringstream os;
      os << "gamma must lie in [0,1] (got " << gamma << ")";
      throw ConfigError(os.str());
    }
  }

  static detail::ShapePiece bp_piece(double lo, double hi, double beta, double gamma, double scale) {
    detail::ShapePiece p;
    // gamma = 1 uses the exact reduction 1/g = cos(beta pi/6 - theta); the
    // arccos(cos) composition would lose half the digits near 3theta = 0, pi.
    p.form = gamma == 1.0 ? detail::PieceForm::BPUnitGamma : detail::PieceForm::BP;
    p.lo = lo;
    p.hi = hi;
    p.beta = beta;
    p.gamma = gamma;
    p.scale = scale;
    return p;
  }

  std::size_t piece_index_left(double t) const {
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (t <= pieces_[i].hi + 1e-12) return i;
    return pieces_.size() - 1;
  }

  std::size_t piece_index_right(double t) const {
    for (std::size_t i = pieces_.size(); i-- > 0;)
      if (t >= pieces_[i].lo - 1e-12) return i;
    return 0;
  }

  static void check_domain(double theta, const char* what) {
    if (!(theta >= -1e-12 && theta <= pi_third + 1e-12)) {
      std::ostringstream os;
      os << what << ": theta = " << theta << " outside [0, pi/3]";
      throw DomainError(os.str());
    }
  }

  static double clamp(double theta) { return std::min(pi_third, std::max(0.0, theta)); }

  void finalize() {
    pieces_.front().lo = 0.0;
    pieces_.back().hi = pi_third;
    breakpoints_.clear();
    breakpoints_.push_back(0.0);
    for (const auto& p : pieces_) breakpoints_.push_back(p.hi);
    validate();
  }

  // Construction-time sanity: strict positivity on a dense grid and value
  // continuity at interior breakpoints.
  void validate() const {
    for (const auto& p : pieces_) {
      const int n = 512;
      for (int i = 0; i <= n; ++i) {
        const double t = p.lo + (p.hi - p.lo) * i / n;
        const double v = p.g(t);
        if (!(v > 0.0) || !std::isfinite(v)) {
          std::ostringstream os;
          os << label_ << ": g(theta) must be strictly positive, got " << v << " at theta=" << t;
          throw ConfigError(os.str());
        }
      }
    }
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
      const double b = pieces_[i].hi;
      const double gl = pieces_[i].g(b), gr = pieces_[i + 1].g(b);
      if (std::abs(gl - gr) > 1e-10 * std::max(1.0, std::abs(gl))) {
        std::ostringstream os;
        os << label_ << ": g(theta) discontinuous at breakpoint theta=" << b;
        throw ConfigError(os.str());
      }
    }
  }

  ShapeTag tag_ = ShapeTag::Constant;
  std::string label_;
  std::vector<detail::ShapePiece> pieces_;
  std::vector<double> breakpoints_;
  std::vector<PiecewiseBPSegment> segments_;
  double theta1_ = 0;
};

} // namespace yieldcvx
