// Deterministic random sampling used by the oracle and the property harnesses.
// Distribution mapping is done by hand (not through std::uniform_real_distribution,
// whose output is implementation-defined) so that a given seed produces the
// same stream on every platform.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace yieldcvx {

using Mat3 = std::array<std::array<double, 3>, 3>;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniformly distributed rotation matrix (random unit quaternion).
  Mat3 rotation() {
    const double u1 = uniform(), u2 = uniform(), u3 = uniform();
    const double two_pi = 6.283185307179586476925286766559;
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double qx = a * std::sin(two_pi * u2);
    const double qy = a * std::cos(two_pi * u2);
    const double qz = b * std::sin(two_pi * u3);
    const double qw = b * std::cos(two_pi * u3);
    Mat3 r;
    r[0] = {1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw)};
    r[1] = {2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw)};
    r[2] = {2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)};
    return r;
  }

private:
  std::mt19937_64 gen_;
};

} // namespace yieldcvx
