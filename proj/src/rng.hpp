#pragma once

#include <cstdint>

namespace genmetric {

// SplitMix64. Fixed, language-neutral generator so seeded runs replay
// identically across builds and reimplementations; all randomized behavior
// in the library (search sampling, suite instance generation) draws from it.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // next() mod n. The modulo bias is irrelevant for the tiny ranges used
  // here and keeps the contract trivial to restate in any language.
  uint64_t bounded(uint64_t n) { return n == 0 ? 0 : next() % n; }
};

// Deterministic per-instance seeding: one SplitMix64 scramble per component.
inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  SplitMix64 s(seed);
  uint64_t h = s.next();
  SplitMix64 sa(h ^ a);
  h = sa.next();
  SplitMix64 sb(h ^ b);
  return sb.next();
}

}  // namespace genmetric
