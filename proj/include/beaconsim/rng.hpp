// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "beaconsim/types.hpp"

namespace beaconsim {

/// Single deterministic random stream for a run. All randomness in a
/// simulation flows through one instance, consumed in event order, so a
/// (config, seed) pair fully determines a run.
///
/// Bounded draws use the multiply-high reduction on top of mt19937_64
/// instead of std::uniform_int_distribution, whose output is
/// implementation-defined; this keeps traces byte-identical across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [lo, hi). Requires lo < hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
    const unsigned __int128 wide = static_cast<unsigned __int128>(gen_()) * span;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

  /// Uniform real in [lo, hi).
  double uniform_real(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  /// Derives an independent stream seed, e.g. for Monte Carlo shards.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace beaconsim
