#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ethsim {

// Deterministic random source. A fixed seed yields a fixed draw sequence on
// every platform: mt19937_64 has a pinned output stream, uniform01 maps the
// top 53 bits into [0, 1), and gaussian applies an explicit Box-Muller
// transform (one value per call, no cached second half).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal deviate; consumes exactly two uniform draws.
  double gaussian() {
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    double u2 = uniform01();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ethsim
