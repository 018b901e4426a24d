#pragma once

// Seeded randomness. All sampling routines take an explicit 64-bit seed so
// runs are reproducible; independent trials use seed + trial index.

#include <cstdint>
#include <random>

#include "latiso/exactlinalg.hpp"

namespace latiso {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), bound >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi], arbitrary precision, by rejection.
  Int uniform(const Int& lo, const Int& hi);
  /// Uniform double in [0, 1).
  double uniform01();
  bool bit() { return engine_() & 1; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace latiso
