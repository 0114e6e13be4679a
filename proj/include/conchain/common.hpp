// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace conchain {

/// Opaque wallet token. Equality and ordering are plain byte order,
/// which keeps every container and serialization deterministic.
using WalletId = std::string;

using TxId = std::uint64_t;

/// Integer minor currency units. Ledger balances never go negative.
using Money = std::int64_t;

/// Virtual time in microseconds. All engine arithmetic is integral so
/// event ordering is exact; conversion to seconds happens only in
/// reports.
using TimeUs = std::int64_t;

constexpr TimeUs kMicrosPerSecond = 1'000'000;

inline double us_to_seconds(TimeUs t) { return static_cast<double>(t) / 1e6; }
inline TimeUs seconds_to_us(double s) { return static_cast<TimeUs>(s * 1e6 + (s >= 0 ? 0.5 : -0.5)); }

/// Incremental 64-bit FNV-1a. Used for block digests and stream
/// checksums; stable across platforms, not cryptographic.
/// Constants: offset basis 14695981039346656037, prime 1099511628211.
class Fnv1a64 {
 public:
  void update(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= static_cast<std::uint64_t>(p[i]);
      state_ *= 1099511628211ULL;
    }
  }

  void update_u8(std::uint8_t v) { update(&v, 1); }

  // Multi-byte integers are folded big-endian so the digest does not
  // depend on host byte order.
  void update_u64_be(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 7; i >= 0; --i) {
      buf[i] = static_cast<unsigned char>(v & 0xFF);
      v >>= 8;
    }
    update(buf, 8);
  }

  void update_str(const std::string& s) { update(s.data(), s.size()); }

  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 14695981039346656037ULL;
};

}  // namespace conchain
