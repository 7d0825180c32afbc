#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "yieldcvx/convexity.hpp"

using namespace yieldcvx;
using testutil::Rng;

namespace {

std::vector<DeviatoricShape> catalog() {
  return {DeviatoricShape::constant(),
          DeviatoricShape::bp(0.5, 0.99),
          DeviatoricShape::bp(1.0, 1.0),
          DeviatoricShape::bp(1.7, 0.4),
          DeviatoricShape::hill1950(),
          DeviatoricShape::two_piece_bp(),
          DeviatoricShape::laydi_lexcellent(),
          DeviatoricShape::poly_counterexample()};
}

DeviatoricShape random_piecewise(Rng& rng) {
  const int n = 2 + static_cast<int>(rng.uniform() * 3.0);
  std::vector<double> cuts;
  for (int i = 0; i + 1 < n; ++i) cuts.push_back(rng.uniform(0.08, pi_third - 0.08));
  std::sort(cuts.begin(), cuts.end());
  std::vector<PiecewiseBPSegment> segs;
  for (int i = 0; i < n; ++i) {
    const double end = i + 1 == n ? pi_third : cuts[static_cast<std::size_t>(i)];
    segs.push_back({end, rng.uniform(0.0, 2.0), rng.uniform(0.0, 1.0)});
  }
  return DeviatoricShape::piecewise_bp(segs);
}

} // namespace

TEST_CASE("certificate on the reference shapes") {
  SECTION("constant: convex with unit curvature margin") {
    const auto r = certify_deviatoric(DeviatoricShape::constant());
    CHECK(r.verdict == Verdict::Convex);
    CHECK(r.find(ConditionName::Curvature)->margin == Catch::Approx(1.0));
    CHECK(r.find(ConditionName::EndpointLeft)->margin == Catch::Approx(0.0).margin(1e-15));
    CHECK(r.find(ConditionName::EndpointRight)->margin == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("laydi-lexcellent: reentrant corners at pi/3") {
    const auto r = certify_deviatoric(DeviatoricShape::laydi_lexcellent());
    CHECK(r.verdict == Verdict::NonConvex);
    const auto* right = r.find(ConditionName::EndpointRight);
    REQUIRE(right != nullptr);
    CHECK_FALSE(right->satisfied);
    CHECK(right->margin == Catch::Approx(-8.0 * std::sqrt(3.0) / 49.0).margin(1e-9));
    CHECK(r.find(ConditionName::Curvature)->satisfied);
    CHECK(r.find(ConditionName::EndpointLeft)->satisfied);
  }
  SECTION("hill1950: convex with a corner jump of 4/3 at pi/6") {
    const auto r = certify_deviatoric(DeviatoricShape::hill1950());
    CHECK(r.verdict == Verdict::Convex);
    const auto* jump = r.find(ConditionName::CornerJump);
    REQUIRE(jump != nullptr);
    CHECK(jump->breakpoint == Catch::Approx(pi / 6.0).margin(1e-15));
    CHECK(jump->margin == Catch::Approx(4.0 / 3.0).margin(1e-9));
  }
  SECTION("smooth bp family member") {
    CHECK(certify_deviatoric(DeviatoricShape::bp(0.5, 0.99)).verdict == Verdict::Convex);
  }
  SECTION("polynomial counterexample: non-convex through the endpoint slope") {
    const auto r = certify_deviatoric(DeviatoricShape::poly_counterexample());
    CHECK(r.verdict == Verdict::NonConvex);
    CHECK_FALSE(r.find(ConditionName::EndpointRight)->satisfied);
    // the curvature expression itself stays positive on (0, pi/3)
    CHECK(r.find(ConditionName::Curvature)->satisfied);
    CHECK(r.find(ConditionName::Curvature)->margin > 0.0);
  }
}

TEST_CASE("criterion certificate adds the meridian condition") {
  const YieldCriterion capped{Meridian::bp({1, 1, 0, 1, 2}), DeviatoricShape::constant()};
  const auto r = certify_criterion(capped);
  CHECK(r.verdict == Verdict::Convex);
  const auto* f2 = r.find(ConditionName::MeridianSecondDerivative);
  REQUIRE(f2 != nullptr);
  CHECK(f2->satisfied);
  CHECK(f2->margin > 0.0);
  // oracle: f = -sqrt(p - p^2) has f'' = 1/(4 (p-p^2)^(3/2)), minimized at the
  // interval center p = 1/2 where it equals 2
  CHECK(f2->margin == Catch::Approx(2.0).margin(1e-4));
  CHECK(f2->worst_location == Catch::Approx(0.5).margin(1e-2));

  CHECK(certify_criterion({Meridian::constant_offset(-1), DeviatoricShape::laydi_lexcellent()})
            .verdict == Verdict::NonConvex);
  CHECK(certify_criterion({Meridian::constant_offset(-1), DeviatoricShape::hill1950()}).verdict ==
        Verdict::Convex);
}

TEST_CASE("sufficient-condition check (LL1/LL2)") {
  SECTION("smooth convex bp violates LL2") {
    const auto r = laydi_lexcellent_check(DeviatoricShape::bp(0.5, 0.99));
    CHECK(r.verdict == Verdict::NonConvex);
    CHECK(r.find(ConditionName::LL1)->satisfied);
    const auto* ll2 = r.find(ConditionName::LL2);
    CHECK_FALSE(ll2->satisfied);
    CHECK(ll2->margin < -1e-6);
    CHECK(ll2->worst_location > 0.0);
    CHECK(ll2->worst_location < pi_third);
  }
  SECTION("non-convex polynomial passes both") {
    const auto r = laydi_lexcellent_check(DeviatoricShape::poly_counterexample());
    CHECK(r.verdict == Verdict::Convex);
    CHECK(r.find(ConditionName::LL1)->satisfied);
    CHECK(r.find(ConditionName::LL2)->satisfied);
  }
  SECTION("constant shape passes with zero margins at theta = 0") {
    const auto r = laydi_lexcellent_check(DeviatoricShape::constant());
    CHECK(r.verdict == Verdict::Convex);
    CHECK(r.find(ConditionName::LL1)->margin == Catch::Approx(0.0).margin(1e-12));
    CHECK(r.find(ConditionName::LL2)->margin == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("sampling oracle") {
  SECTION("norm-like shape passes") {
    const auto r = sampling_oracle(DeviatoricShape::constant(), 100000, 0);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK_FALSE(r.witness.has_value());
  }
  SECTION("reentrant corners produce a witness straddling a pi/3 image") {
    const auto r = sampling_oracle(DeviatoricShape::laydi_lexcellent(), 100000, 0);
    CHECK(r.verdict == Verdict::NonConvex);
    REQUIRE(r.witness.has_value());
    const auto mid = (r.witness->a + r.witness->b) * 0.5;
    const double theta_mid = pair_theta(mid);
    CHECK(theta_mid > pi_third - 0.02);
  }
  SECTION("polynomial counterexample fails sampling") {
    const auto r = sampling_oracle(DeviatoricShape::poly_counterexample(), 100000, 0);
    CHECK(r.verdict == Verdict::NonConvex);
    CHECK(r.witness.has_value());
  }
}

TEST_CASE("comparison table flags") {
  SECTION("counter-example to necessity") {
    const auto t = compare_conditions(DeviatoricShape::bp(0.5, 0.99), 2048, 20000, 0);
    CHECK(t.certificate.verdict == Verdict::Convex);
    CHECK(t.laydi_lexcellent.verdict == Verdict::NonConvex);
    CHECK(t.oracle.verdict == Verdict::Inconclusive);
    REQUIRE(t.flags.size() == 1);
    CHECK(t.flags[0].find("not necessary") != std::string::npos);
    CHECK(t.certificate_oracle_agree);
  }
  SECTION("counter-example to sufficiency") {
    const auto t = compare_conditions(DeviatoricShape::poly_counterexample(), 2048, 20000, 0);
    CHECK(t.certificate.verdict == Verdict::NonConvex);
    CHECK(t.laydi_lexcellent.verdict == Verdict::Convex);
    CHECK(t.oracle.verdict == Verdict::NonConvex);
    REQUIRE(t.flags.size() == 1);
    CHECK(t.flags[0].find("not sufficient") != std::string::npos);
    CHECK(t.certificate_oracle_agree);
  }
  SECTION("agreement on the trivial shape") {
    const auto t = compare_conditions(DeviatoricShape::constant(), 2048, 20000, 0);
    CHECK(t.certificate.verdict == Verdict::Convex);
    CHECK(t.laydi_lexcellent.verdict == Verdict::Convex);
    CHECK(t.oracle.verdict == Verdict::Inconclusive);
    CHECK(t.flags.empty());
    CHECK(t.certificate_oracle_agree);
  }
}

TEST_CASE("strictness boundary at corner jumps") {
  // two identical pieces: the breakpoint is not a real corner, slopes match
  const auto smooth = DeviatoricShape::piecewise_bp({{pi / 6.0, 0.8, 0.6}, {pi_third, 0.8, 0.6}});
  const auto rs = certify_deviatoric(smooth);
  CHECK(rs.verdict == Verdict::Convex);
  const auto* jump = rs.find(ConditionName::CornerJump);
  REQUIRE(jump != nullptr);
  CHECK(std::abs(jump->margin) < 1e-10);
  CHECK(jump->satisfied);

  // reversed hill: the corner points inward, certificate refuses and the
  // oracle exhibits a straddling witness
  const auto reentrant =
      DeviatoricShape::piecewise_bp({{pi / 6.0, 2.0, 1.0}, {pi_third, 0.0, 1.0}});
  const auto rr = certify_deviatoric(reentrant);
  CHECK(rr.verdict == Verdict::NonConvex);
  CHECK_FALSE(rr.find(ConditionName::CornerJump)->satisfied);
  CHECK(rr.find(ConditionName::CornerJump)->margin < 0.0);
  const auto oracle = sampling_oracle(reentrant, 50000, 0);
  CHECK(oracle.verdict == Verdict::NonConvex);
  REQUIRE(oracle.witness.has_value());
  // both pieces are straight (unit gamma), so any violating chord must
  // straddle the corner image: the endpoint Lode angles bracket pi/6
  const double ta = pair_theta(oracle.witness->a);
  const double tb = pair_theta(oracle.witness->b);
  CHECK((ta - pi / 6.0) * (tb - pi / 6.0) <= 1e-12);
}

TEST_CASE("curvature condition equals the polar-curve curvature sign") {
  // independent oracle: curvature numerator of the parametric polar curve
  // (x, y) = g(theta) (cos theta, sin theta), computed by finite differences
  // of the coordinates only
  for (const auto& shape : {DeviatoricShape::bp(0.5, 0.99), DeviatoricShape::bp(1.3, 0.7),
                            DeviatoricShape::laydi_lexcellent(),
                            DeviatoricShape::poly_counterexample()}) {
    auto x = [&](double t) { return shape.eval(t) * std::cos(t); };
    auto y = [&](double t) { return shape.eval(t) * std::sin(t); };
    const double h = 1e-5;
    for (int i = 1; i < 1000; ++i) {
      const double t = 0.01 + (pi_third - 0.02) * i / 1000.0;
      const double xp = (x(t + h) - x(t - h)) / (2 * h);
      const double yp = (y(t + h) - y(t - h)) / (2 * h);
      const double xpp = (x(t + h) - 2 * x(t) + x(t - h)) / (h * h);
      const double ypp = (y(t + h) - 2 * y(t) + y(t - h)) / (h * h);
      const double kappa_num = xp * ypp - yp * xpp;
      const double g = shape.eval(t), gp = shape.derivative(t), gpp = shape.second_derivative(t);
      const double curv = g * g + 2 * gp * gp - g * gpp;
      // identical quantities: x' y'' - y' x'' = g^2 + 2 g'^2 - g g''
      CHECK(kappa_num == Catch::Approx(curv).margin(1e-4 * std::max(1.0, std::abs(curv))));
    }
  }
}

TEST_CASE("endpoint corners of the unit-gamma family are convex") {
  for (double beta : {0.5, 1.0, 1.5}) {
    const auto shape = DeviatoricShape::bp(beta, 1.0);
    CHECK(shape.derivative(0.0, Side::Right) < 0.0);
    CHECK(shape.derivative(pi_third, Side::Left) > 0.0);
    CHECK(certify_deviatoric(shape).verdict == Verdict::Convex);
  }
}

TEST_CASE("certificate and oracle agree across the catalog and random shapes") {
  for (const auto& shape : catalog()) {
    const auto cert = certify_deviatoric(shape);
    const auto oracle = sampling_oracle(shape, 30000, 7);
    INFO(shape.label());
    CHECK((cert.verdict == Verdict::Convex) == (oracle.verdict == Verdict::Inconclusive));
  }
  Rng rng(101);
  for (int i = 0; i < 8; ++i) {
    const auto shape = random_piecewise(rng);
    const auto cert = certify_deviatoric(shape);
    const auto oracle = sampling_oracle(shape, 30000, 7);
    INFO(shape.label() << " trial " << i);
    CHECK((cert.verdict == Verdict::Convex) == (oracle.verdict == Verdict::Inconclusive));
  }
}

TEST_CASE("oracle determinism: same seed, same witness") {
  const auto a = sampling_oracle(DeviatoricShape::poly_counterexample(), 20000, 42);
  const auto b = sampling_oracle(DeviatoricShape::poly_counterexample(), 20000, 42);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->a.s1 == b.witness->a.s1);
  CHECK(a.witness->b.s2 == b.witness->b.s2);
  CHECK(a.witness->violation == b.witness->violation);
}
