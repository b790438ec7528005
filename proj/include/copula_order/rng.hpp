#pragma once

#include <cstdint>

namespace copord {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th draw of stream s under seed k is a pure
/// function of (k, s, i), which makes parallel sampling order-independent.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  double exponential();
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace copord
