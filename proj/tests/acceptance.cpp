// End-to-end acceptance suite. Each test case is one acceptance criterion and
// prints one PASS/FAIL line through the listener below.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "yieldcvx/yieldcvx.hpp"

using namespace yieldcvx;
using testutil::Rng;

namespace {

class AcceptanceReporter : public Catch::EventListenerBase {
public:
  using EventListenerBase::EventListenerBase;
  void testCaseEnded(const Catch::TestCaseStats& stats) override {
    std::printf("[%s] %s\n", stats.totals.assertions.allOk() ? " PASS " : " FAIL ",
                stats.testInfo->name.c_str());
    std::fflush(stdout);
  }
};
CATCH_REGISTER_LISTENER(AcceptanceReporter)

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

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Polar {
  double theta, g, x, y;
};

std::vector<Polar> read_deviatoric_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "theta,g,x,y");
  std::vector<Polar> rows;
  while (std::getline(in, line)) {
    Polar p{};
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    ss >> p.theta >> p.g >> p.x >> p.y;
    rows.push_back(p);
  }
  return rows;
}

int count_vertices(const std::vector<Polar>& pts_in) {
  // closed polyline: last row repeats the first
  std::vector<Polar> pts(pts_in.begin(), pts_in.end() - 1);
  const std::size_t n = pts.size();
  int clusters = 0;
  bool in_cluster = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[(i + n - 1) % n];
    const auto& b = pts[i];
    const auto& c = pts[(i + 1) % n];
    const double e1x = b.x - a.x, e1y = b.y - a.y, e2x = c.x - b.x, e2y = c.y - b.y;
    const double cross = e1x * e2y - e1y * e2x;
    const double scale = std::hypot(e1x, e1y) * std::hypot(e2x, e2y);
    const bool spike = scale > 0 && std::abs(cross / scale) > 0.05;
    if (spike && !in_cluster) ++clusters;
    in_cluster = spike;
  }
  return clusters;
}

} // namespace

TEST_CASE("01 smooth convex shape: certificate convex, LL2 violated, oracle silent") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = compare_conditions(DeviatoricShape::bp(0.5, 0.99), 2048, 100000, 0);
  CHECK(table.certificate.verdict == Verdict::Convex);
  CHECK(table.laydi_lexcellent.verdict == Verdict::NonConvex);
  const auto* ll2 = table.laydi_lexcellent.find(ConditionName::LL2);
  REQUIRE(ll2 != nullptr);
  CHECK_FALSE(ll2->satisfied);
  CHECK(ll2->margin < -1e-6);
  CHECK(ll2->worst_location > 0.0);
  CHECK(ll2->worst_location < pi_third);
  CHECK(table.laydi_lexcellent.find(ConditionName::LL1)->satisfied);
  CHECK(table.oracle.verdict == Verdict::Inconclusive);
  CHECK(table.certificate_oracle_agree);
  CHECK(seconds_since(t0) < 5.0);
}

TEST_CASE("02 quartic counterexample: certificate non-convex, both LL conditions hold, "
          "oracle witnesses") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = compare_conditions(DeviatoricShape::poly_counterexample(), 2048, 100000, 0);
  CHECK(table.certificate.verdict == Verdict::NonConvex);
  CHECK(table.laydi_lexcellent.verdict == Verdict::Convex);
  CHECK(table.laydi_lexcellent.find(ConditionName::LL1)->satisfied);
  CHECK(table.laydi_lexcellent.find(ConditionName::LL2)->satisfied);
  CHECK(table.oracle.verdict == Verdict::NonConvex);
  CHECK(table.oracle.witness.has_value());
  // the violated certificate condition is the endpoint slope at pi/3 (the
  // interior curvature expression stays positive for this shape)
  CHECK_FALSE(table.certificate.find(ConditionName::EndpointRight)->satisfied);
  CHECK(table.certificate.find(ConditionName::Curvature)->satisfied);
  CHECK(seconds_since(t0) < 5.0);
}

TEST_CASE("03 inverse-quadratic cosine shape: non-convex with the exact endpoint margin") {
  const auto report = certify_deviatoric(DeviatoricShape::laydi_lexcellent(), 2048);
  CHECK(report.verdict == Verdict::NonConvex);
  const auto* right = report.find(ConditionName::EndpointRight);
  REQUIRE(right != nullptr);
  CHECK_FALSE(right->satisfied);
  // closed form: g'(pi/3) = -sin(2 pi/3) / (2 - cos^2(pi/3))^2 = -8 sqrt(3)/49
  CHECK(right->margin == Catch::Approx(-8.0 * std::sqrt(3.0) / 49.0).margin(1e-9));
  CHECK(right->margin < 0.0);
}

TEST_CASE("04 piecewise maximum-shear section: convex, corner jump 4/3, unit yield ratio") {
  const auto report = certify_deviatoric(DeviatoricShape::hill1950(), 2048);
  CHECK(report.verdict == Verdict::Convex);
  const auto* jump = report.find(ConditionName::CornerJump);
  REQUIRE(jump != nullptr);
  CHECK(jump->breakpoint == Catch::Approx(pi / 6.0).margin(1e-12));
  // one-sided slopes +-2/3 give the jump (2/3) - (-2/3) = 4/3
  CHECK(jump->margin == Catch::Approx(4.0 / 3.0).margin(1e-9));
  const double ratio =
      ft_fc_ratio({Meridian::constant_offset(-1.0), DeviatoricShape::hill1950()});
  CHECK(ratio == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("05 unit-gamma family: corners at both ends yet convex, sections regenerate "
          "the polygon geometry") {
  const std::string cli = YIELDCVX_CLI_PATH;
  const std::string cfg = YIELDCVX_CONFIG_DIR;
  const std::vector<double> betas{0.0, 0.5, 1.0, 1.5, 2.0};
  for (double beta : betas) {
    const auto shape = DeviatoricShape::bp(beta, 1.0);
    CHECK(certify_deviatoric(shape, 2048).verdict == Verdict::Convex);
    if (beta > 0.0 && beta < 2.0) {
      CHECK(shape.derivative(0.0, Side::Right) < 0.0);
      CHECK(shape.derivative(pi_third, Side::Left) > 0.0);
    }
  }

  // regenerate the file family through the CLI sweep
  const std::string cmd = cli + " section " + cfg +
                          "/bp-cap-tresca.json --kind deviatoric --out accept5.csv --points 60 "
                          "--param-sweep deviatoric.beta=0,0.5,1,1.5,2 > accept5.log 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);

  const std::vector<std::string> suffixes{"0", "0.5", "1", "1.5", "2"};
  const std::vector<int> expected_vertices{3, 6, 6, 6, 3};
  for (std::size_t i = 0; i < suffixes.size(); ++i) {
    const std::string path = "accept5_beta" + suffixes[i] + ".csv";
    const auto rows = read_deviatoric_csv(path);
    REQUIRE(rows.size() > 120);
    // closed with an exact repeat
    CHECK(rows.front().x == rows.back().x);
    CHECK(rows.front().y == rows.back().y);
    // vertex count of the polygonal family member
    CHECK(count_vertices(rows) == expected_vertices[i]);
    // six-fold symmetry: invariance under a 120-degree rotation and under
    // reflection across the first projection axis
    const std::size_t n = rows.size() - 1;
    REQUIRE(n % 3 == 0);
    const double c = std::cos(2.0 * pi / 3.0), s = std::sin(2.0 * pi / 3.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = rows[k];
      const auto& r = rows[(k + n / 3) % n];
      CHECK(std::abs(r.x - (c * p.x - s * p.y)) < 1e-9);
      CHECK(std::abs(r.y - (s * p.x + c * p.y)) < 1e-9);
      const auto& m = rows[(n - k) % n];
      CHECK(std::abs(m.x - p.x) < 1e-9);
      CHECK(std::abs(m.y + p.y) < 1e-9);
    }
    std::remove(path.c_str());
  }
  std::remove("accept5.log");
}

TEST_CASE("06 certificate and oracle never disagree across the catalog and twenty "
          "seeded piecewise shapes") {
  const auto t0 = std::chrono::steady_clock::now();
  int disagreements = 0;
  auto check_one = [&](const DeviatoricShape& shape) {
    const auto cert = certify_deviatoric(shape, 2048);
    const auto oracle = sampling_oracle(shape, 100000, 0);
    const bool cert_convex = cert.verdict == Verdict::Convex;
    const bool oracle_clean = oracle.verdict == Verdict::Inconclusive;
    INFO(shape.label());
    CHECK(cert_convex == oracle_clean);
    disagreements += cert_convex != oracle_clean;
  };
  for (const auto& shape : catalog()) check_one(shape);

  Rng rng(20260809);
  for (int i = 0; i < 20; ++i) {
    const int pieces = 2 + static_cast<int>(rng.uniform() * 3.0);
    std::vector<double> cuts;
    for (int k = 0; k + 1 < pieces; ++k) cuts.push_back(rng.uniform(0.08, pi_third - 0.08));
    std::sort(cuts.begin(), cuts.end());
    std::vector<PiecewiseBPSegment> segs;
    for (int k = 0; k < pieces; ++k) {
      const double end = k + 1 == pieces ? pi_third : cuts[static_cast<std::size_t>(k)];
      segs.push_back({end, rng.uniform(0.0, 2.0), rng.uniform(0.0, 1.0)});
    }
    check_one(DeviatoricShape::piecewise_bp(segs));
  }
  CHECK(disagreements == 0);
  CHECK(seconds_since(t0) < 60.0);
}

TEST_CASE("07 plane Hessian matches finite differences; the mixed identity stays below "
          "tolerance") {
  for (const auto& shape : catalog()) {
    Rng rng(71);
    for (int i = 0; i < 100; ++i) {
      const auto s = testutil::random_smooth_pair(rng, shape.interior_breakpoints());
      const auto H = dev_hessian(s, shape);
      const double h = 1e-4 * s.norm();
      const auto fd = testutil::fd_hessian(
          [&](DeviatoricPair p) { return pair_q(p) / shape.eval(pair_theta(p)); }, s, h);
      const double scale =
          std::max({1.0 / s.norm(), std::abs(H.h11), std::abs(H.h12), std::abs(H.h22)});
      CHECK(std::abs(H.h11 - fd[0][0]) <= 1e-5 * scale);
      CHECK(std::abs(H.h12 - fd[0][1]) <= 1e-5 * scale);
      CHECK(std::abs(H.h22 - fd[1][1]) <= 1e-5 * scale);
    }
  }
  Rng rng(72);
  for (int i = 0; i < 1000; ++i) {
    const auto s = testutil::random_interior_pair(rng);
    const auto r = vanishing_identity_check(s);
    CHECK(r.normalized() <= 1e-5);
  }
}

TEST_CASE("08 ordered eigenvalue product bounds the contraction") {
  Rng rng(81);
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_symmetric(rng);
    const auto b = random_symmetric(rng);
    const auto [lhs, rhs] = ordered_product_bound(a, b);
    CHECK(lhs <= rhs + 1e-10 * std::max(1e-300, a.norm() * b.norm()));
  }
  for (int i = 0; i < 2000; ++i) {
    double la[3] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    double lb[3] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::sort(la, la + 3, std::greater<>());
    std::sort(lb, lb + 3, std::greater<>());
    const auto rot = rng.rotation();
    const auto a = rotate(SymmetricTensor3::diagonal(la[0], la[1], la[2]), rot);
    const auto b = rotate(SymmetricTensor3::diagonal(lb[0], lb[1], lb[2]), rot);
    const auto [lhs, rhs] = ordered_product_bound(a, b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 + 1e-11 * a.norm() * b.norm());
  }
}

TEST_CASE("09 principal-value convexity transfer: max eigenvalue passes, determinant "
          "fails reproducibly") {
  const auto ok = tensor_convexity_from_principal(pf_max_eigenvalue(), 10000, 90);
  CHECK(ok.passed);

  const auto bad1 = tensor_convexity_from_principal(pf_determinant(), 10000, 91);
  const auto bad2 = tensor_convexity_from_principal(pf_determinant(), 10000, 91);
  CHECK_FALSE(bad1.passed);
  CHECK_FALSE(bad2.passed);
  CHECK(bad1.failed_trial == bad2.failed_trial);
  CHECK(bad1.witness_a.a11 == bad2.witness_a.a11);
  CHECK(bad1.violation == bad2.violation);
}

TEST_CASE("10 hydrostatic-origin slope jump matches the closed form for every catalog "
          "shape") {
  for (const auto& shape : catalog()) {
    for (double k : {-2.0, 0.0, 1.0, 10.0}) {
      const auto slopes = line_restriction_slopes({0, 0}, k, shape);
      // theta of the two ray directions; the jump combines both sides,
      // 2 sqrt(3) sqrt(1+k+k^2) / g_h with g_h the harmonic mean of
      // g(theta+) and g(theta-)
      const double theta_plus = pair_theta({1.0, k});
      const double theta_minus = pi_third - theta_plus;
      const double mag = std::sqrt(3.0) * std::sqrt(1.0 + k + k * k);
      const double expected =
          mag * (1.0 / shape.eval(theta_plus) + 1.0 / shape.eval(theta_minus));
      CHECK(std::abs(slopes.jump() - expected) <= 1e-9);
      CHECK(slopes.jump() > 0.0);
    }
  }
}
