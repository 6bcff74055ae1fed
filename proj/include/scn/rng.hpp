#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scn {

// SplitMix64 finalizer; avalanches a 64-bit value.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Derives an independent stream seed from (master, a, b). Counter-based, so
// equal inputs give equal seeds no matter in which order calls happen. This
// is what makes sweep cells and standalone runs byte-identical.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  std::uint64_t s = mix64(master + kGolden);
  s = mix64(s + kGolden * (a + 1));
  s = mix64(s + kGolden * (b + 1));
  return s;
}

// Deterministic random stream. mt19937_64 output is fully pinned by the
// standard; the distribution transforms are done by hand because the
// std::*_distribution classes are not portable across library versions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unit-mean exponential via inverse CDF; log1p keeps precision near 0.
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace scn
