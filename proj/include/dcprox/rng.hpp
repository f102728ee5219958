#pragma once

#include <cstdint>
#include <random>

namespace dcprox {

/// Seeded source for probes and samplers. Only the engine (whose sequence
/// the standard fixes) is used, so draws are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dcprox
