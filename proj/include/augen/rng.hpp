#pragma once

#include <cstdint>

namespace augen {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// 64-bit avalanche finalizer from SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (master_seed, stream_index).
///
/// Output n is a hash of (key, stream, n), so the full state is the key
/// material plus a draw counter. Two streams built from different
/// (seed, index) pairs carry different state by construction, and the draw
/// sequence never depends on call order or thread assignment. One stream is
/// derived per image when augmenting, which is what makes batch results
/// independent of the worker count.
class RngStream {
 public:
  constexpr RngStream() noexcept : RngStream(0, 0) {}
  constexpr RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
      : key_(mix64(master_seed ^ 0xA0761D6478BD642Full)),
        stream_(mix64(stream_index + kGoldenGamma)) {}

  constexpr std::uint64_t next_u64() noexcept {
    std::uint64_t z = counter_++ * kGoldenGamma;
    z = mix64(z ^ key_);
    return mix64(z + stream_);
  }

  /// Uniform in [0, n). Consumes exactly one 64-bit word; the multiply-high
  /// reduction carries bias at most n / 2^64.
  constexpr std::uint64_t next_below(std::uint64_t n) noexcept {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next_u64()) * n) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Number of 64-bit words drawn so far.
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  friend constexpr bool operator==(const RngStream& a, const RngStream& b) noexcept {
    return a.key_ == b.key_ && a.stream_ == b.stream_ && a.counter_ == b.counter_;
  }

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Stream for image number `image_index` under `master_seed`. The same pair
/// always yields the same stream.
constexpr RngStream derive_stream(std::uint64_t master_seed, std::uint64_t image_index) noexcept {
  return RngStream(master_seed, image_index);
}

}  // namespace augen
