#pragma once

// Deterministic pseudorandom bits: SplitMix64 in counter mode. Word k
// (0-based) of stream `seed` is mix(seed + (k + 1) * 0x9E3779B97F4A7C15),
// using only 64-bit unsigned arithmetic, so output is identical on every
// platform and compiler.

#include <cstdint>

namespace magc {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) noexcept {
  return splitmix64_mix(seed + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Independent child seed for sub-stream `stream` of `seed`.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64_mix(splitmix64_mix(seed) ^ splitmix64_mix(stream + 0x632BE59BD9B4E019ULL));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept { return splitmix64_at(seed_, counter_++); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace magc
