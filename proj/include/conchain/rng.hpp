// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace conchain {

/// SplitMix64 (Steele, Lea, Flood 2014). One 64-bit word of state, the
/// usual constants 0x9E3779B97F4A7C15 / 0xBF58476D1CE4E5B9 /
/// 0x94D049BB133111EB. Chosen because it is trivially portable: every
/// draw is pure integer arithmetic, so identical seeds give identical
/// streams on every platform and optimization level.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n). n = 0 returns 0. Fixed-point multiply, no
  /// rejection loop, so consumption is exactly one draw.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) return 0;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

  /// Exponential inter-arrival with the given rate (events per second),
  /// quantized to whole microseconds and clamped to at least 1.
  std::int64_t next_exponential_us(double rate_per_second) {
    double u = 1.0 - next_unit();  // (0, 1]
    double dt_us = -std::log(u) / rate_per_second * 1e6;
    auto q = static_cast<std::int64_t>(std::llround(dt_us));
    return q < 1 ? 1 : q;
  }

 private:
  std::uint64_t state_;
};

}  // namespace conchain
