// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace nanowire {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: draw k is mix64(key + (k + 1) * golden), so a stream
/// is fully determined by its key and can be positioned without state.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit constexpr CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  /// Key of trajectory `index` in an ensemble seeded with `seed`.
  static constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index * kGolden + 0x632be59bd9b4e019ULL));
  }

  constexpr std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on the open interval (0, 1).
  constexpr double uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace nanowire
