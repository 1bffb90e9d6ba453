#pragma once

#include <cstdint>
#include <random>

namespace noiselab {

/// SplitMix64 finalizer; used to derive independent shard seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of shard `shard` under master seed `master`. Pure function of its inputs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t shard);

/// Seeded generator with platform-independent conversions (the standard
/// distributions are implementation-defined, so they are not used here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exp(1) by inversion of the uniform stream.
  double exp1();

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace noiselab
