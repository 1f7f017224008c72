#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace vexlab {

// Seeded generator with distribution code written out here, so that sample
// streams do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }
  std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vexlab
