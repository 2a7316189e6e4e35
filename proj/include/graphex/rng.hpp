#pragma once

#include <cstdint>
#include <initializer_list>

namespace graphex {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Hashes a seed and a path of integer tags into a stream key.
constexpr std::uint64_t derive_key(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  for (std::uint64_t tag : path) key = mix64(key ^ mix64(tag + 0x3C6EF372FE94F82BULL));
  return key;
}

/// Counter-based stream: the n-th output depends only on (key, n), so any
/// number of independent streams can be addressed without shared state.
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) : key_(key) {}
  CounterStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : key_(derive_key(seed, path)) {}

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * 0xD1B54A32D192ED03ULL);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) for n >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t n);

  double normal();
  double exponential();

  /// Poisson variate; the count is returned as a double because means may
  /// exceed the range of 64-bit integers.
  double poisson(double mean);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace graphex
