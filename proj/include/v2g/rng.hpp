#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace v2g {

/// Seeded generator with platform-independent draws. std::uniform_*_distribution
/// is implementation-defined, so the conversions are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 mix of (base, stream); used to give every run, epoch and agent
/// role its own independent generator.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace v2g
