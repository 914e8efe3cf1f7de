#pragma once

#include <cstdint>
#include <random>

#include "spintomo/geometry.hpp"

namespace spintomo {

// Seeded generator with hand-rolled transforms. std::* distributions are
// implementation-defined, so they cannot back the byte-identical-report
// guarantee; these transforms are pinned.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
      u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  Complex normal_complex() {
    double re = normal();
    double im = normal();
    return {re * 0.7071067811865476, im * 0.7071067811865476};
  }

  // Uniform direction on the sphere.
  UnitAxis axis() {
    double z = uniform(-1.0, 1.0);
    double phi = uniform(0.0, kTwoPi);
    return UnitAxis::from_angles(std::acos(z), phi);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace spintomo
