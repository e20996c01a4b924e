#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lexsym {

// Deterministic seed derivation. Augmentation results must not depend on
// platform hashing or thread scheduling, so everything below is fixed-width
// integer arithmetic with pinned constants.

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

// uniform integer in [0, n); n >= 1
inline size_t rng_index(std::mt19937_64& g, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(g);
}

}  // namespace lexsym
