#pragma once

#include <cstdint>
#include <random>

namespace ddgp {

// splitmix64 (Steele/Lea/Flood). Fully specified arithmetic, so streams are
// identical on every platform. Used to derive per-sample substreams from
// (seed, sample index) without correlation between adjacent indices.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Map 64 random bits to a double in [0, 1) using the top 53 bits. We avoid
// std::uniform_real_distribution because its output is not pinned down by the
// standard and differs between library implementations.
inline double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Deterministic, seedable generator built on std::mt19937_64 (whose output
// sequence is fixed by the standard) with explicit mappings to doubles and
// bounded integers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * bits_to_unit(engine_());
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  bool bernoulli(double p) { return bits_to_unit(engine_()) < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ddgp
