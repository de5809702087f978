#pragma once

#include <cstdint>

namespace lshlab {

/// Seed used whenever a caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED'2011'1C5Bull;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based generator: output n of stream s under seed k is
/// mix64(key(k, s) + n * golden), with key(k, s) = mix64(mix64(k) ^ mix64(~s)).
///
/// Every (seed, stream) pair names an independent substream, so work item i
/// of a parallel Monte Carlo loop draws from stream i and the aggregate does
/// not depend on scheduling. All distributions below are defined here rather
/// than through <random> so results are identical across standard libraries.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix64(mix64(seed) ^ mix64(~stream))) {}

  std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  bool coin() noexcept { return (next() >> 63) != 0; }

  /// Child stream derived from this stream's key; does not advance the parent.
  CounterRng substream(std::uint64_t index) const noexcept {
    CounterRng child(0, 0);
    child.key_ = mix64(key_ ^ mix64(index + 0xD1B54A32D192ED03ull));
    return child;
  }

  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lshlab
