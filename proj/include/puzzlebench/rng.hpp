#pragma once

#include <cstdint>

namespace puzzlebench {

// SplitMix64 (Steele, Lea, Flood; public-domain reference constants).
// Fixed as the project-wide PRNG so seeded samples reproduce across
// reimplementations in other languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Bounded draw in [0, bound). Plain modulo: the bias is negligible for the
  // pool sizes used here and keeping the reduction trivial makes the stream
  // easy to reproduce elsewhere.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // The n-th output (1-based) of the stream seeded with `seed`, computed by
  // random access. Used to derive independent per-repeat seeds that do not
  // depend on execution order.
  static std::uint64_t nth(std::uint64_t seed, std::uint64_t n) {
    return mix(seed + n * 0x9E3779B97F4A7C15ULL);
  }

 private:
  std::uint64_t state_;
};

// Seed for ensemble repeat r (1-based) under base seed `base`.
inline std::uint64_t derive_repeat_seed(std::uint64_t base, std::uint64_t repeat) {
  return SplitMix64::nth(base, repeat);
}

}  // namespace puzzlebench
