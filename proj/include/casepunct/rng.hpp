#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace casepunct {

// splitmix64 finalizer; used to derive independent seed streams from a base
// seed plus arm/stage tags so sweep arms never share randomness.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t seed, std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix_seed(seed, h);
}

// Bounded draw with explicit arithmetic so shuffles do not depend on the
// standard library's unspecified std::shuffle/uniform_int implementation.
inline uint64_t bounded_rand(std::mt19937_64& rng, uint64_t bound) {
  // bound > 0; modulo bias is irrelevant at corpus scale but rejection
  // sampling keeps the draw exact anyway.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

// Fisher-Yates over indices, fully pinned by the seed.
inline std::vector<size_t> shuffled_indices(size_t n, uint64_t seed) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = n; i > 1; --i) {
    size_t j = static_cast<size_t>(bounded_rand(rng, i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace casepunct
