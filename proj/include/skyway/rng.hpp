#pragma once

#include <cmath>
#include <cstdint>

namespace skyway {

/// SplitMix64 generator. Used everywhere a seeded stream is needed so that
/// generated networks, schedules and benchmark draws are byte-stable across
/// platforms (std distributions are implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n). Modulo bias is irrelevant at the sizes used here.
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  /// Exponential variate with the given mean.
  double next_exponential(double mean) { return -mean * std::log1p(-next_unit()); }

private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a master seed and salts.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  Rng r(seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xd1b54a32d192ed03ull));
  return r.next_u64();
}

}  // namespace skyway
