#pragma once

#include <cstdint>
#include <limits>

namespace coopsim {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based pseudorandom stream.
///
/// The i-th output of a stream with key k is mix64(k + i * gamma), so a stream
/// is fully described by (key, position) and child streams are derived by
/// hashing a tag into a fresh key. Construction is two multiplies, which is
/// what lets the epidemic give every vertex its own destination stream.
///
/// Satisfies UniformRandomBitGenerator, so the <random> distributions accept it.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  constexpr explicit RandomStream(std::uint64_t key = 0) noexcept : key_(key) {}

  /// Stream of replicate `replicate` in experiment `experiment`.
  static constexpr RandomStream derive(std::uint64_t base_seed, std::uint64_t experiment,
                                       std::uint64_t replicate) noexcept {
    return RandomStream(base_seed).split(experiment).split(replicate);
  }

  constexpr RandomStream split(std::uint64_t tag) const noexcept {
    return RandomStream(mix64(key_ ^ mix64(tag + kGoldenGamma)) + 0x632be59bd9b4e019ULL);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGoldenGamma); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace coopsim
