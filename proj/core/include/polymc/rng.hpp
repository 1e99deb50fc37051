#pragma once

// Randomness helpers. Every chain owns one engine; engines are seeded from a
// master seed through derive_seed so results never depend on scheduling.
//
// The uniform/integer helpers are written out instead of using the
// <random> distributions because the standard leaves their algorithms
// implementation-defined; these are bit-identical on every platform.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace polymc {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream (a, b) of a master seed. Distinct (a, b) pairs give
/// statistically independent engines.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(a + 1)) ^ splitmix64(~b));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe to pass to log().
inline double uniform_open01(Rng& rng) { return 1.0 - uniform01(rng); }

/// Unbiased integer in [0, n) (Lemire's multiply-and-reject).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace polymc
