#ifndef BDMG_RNG_HPP
#define BDMG_RNG_HPP

#include <cstdint>

namespace bdmg {

// SplitMix64 (Steele, Lea, Flood 2014). This is the one PRNG used anywhere in
// the library; every randomized procedure documents its draw order so that a
// (spec, seed) pair maps to exactly one output, forever.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    return mix(state);
  }

  // Uniform in [0, bound) by rejection: draws are rejected while
  // x >= UINT64_MAX - (UINT64_MAX % bound), then reduced mod bound.
  uint64_t next_below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1): top 53 bits of one draw.
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
};

// Fisher-Yates, descending index order: for i = n-1..1, swap(a[i], a[j]),
// j = next_below(i + 1).
template <typename T>
void shuffle(T* a, int n, SplitMix64& rng) {
  for (int i = n - 1; i >= 1; --i) {
    const uint64_t j = rng.next_below(uint64_t(i) + 1);
    T tmp = a[i];
    a[i] = a[size_t(j)];
    a[size_t(j)] = tmp;
  }
}

} // namespace bdmg

#endif
