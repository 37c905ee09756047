#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace tropetwist {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; derives independent stream seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL)));
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace tropetwist
