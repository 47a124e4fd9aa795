#ifndef BDMG_PERMUTATION_HPP
#define BDMG_PERMUTATION_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bdmg/errors.hpp"
#include "bdmg/rng.hpp"

namespace bdmg {

// map[i] is the image of vertex i. Vertex counts stay small (enumeration is
// guarded at n <= 13), so 8-bit entries are enough everywhere.
using Perm = std::vector<uint8_t>;

// Enumeration guard: 13! is the largest symmetric group this artifact walks.
inline constexpr int kMaxEnumVertices = 13;

inline Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), uint8_t(0));
  return p;
}

inline bool is_permutation(const Perm& p) {
  uint32_t seen = 0;
  if (p.size() > 32) return false;
  for (uint8_t v : p) {
    if (v >= p.size() || (seen >> v) & 1u) return false;
    seen |= 1u << v;
  }
  return true;
}

inline Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = uint8_t(i);
  return q;
}

// (f∘g)(i) = f[g[i]]: apply g first.
inline Perm compose(const Perm& f, const Perm& g) {
  Perm r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

inline uint64_t factorial(int n) {
  uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= uint64_t(i);
  return f;
}

inline void check_enum_size(int n) {
  if (n < 1) fail(Errc::invalid_spec, "vertex count must be >= 1");
  if (n > kMaxEnumVertices)
    fail(Errc::too_large, "symmetric-group enumeration is limited to n <= 13 (got n=" +
                              std::to_string(n) + ")");
}

// Lexicographic rank in [0, n!) via the factorial number system.
inline uint64_t perm_rank(const Perm& p) {
  const int n = int(p.size());
  uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    rank += uint64_t(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

inline Perm perm_unrank(int n, uint64_t rank) {
  Perm pool = identity_perm(n);
  Perm out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const uint64_t f = factorial(n - 1 - i);
    const uint64_t d = rank / f;
    rank %= f;
    out[size_t(i)] = pool[size_t(d)];
    pool.erase(pool.begin() + long(d));
  }
  return out;
}

// Advances p to its lexicographic successor; false after the last one.
inline bool next_perm(Perm& p) { return std::next_permutation(p.begin(), p.end()); }

// Stream of all n! permutations in lexicographic order of the map array.
// Index-addressable so the range [0, n!) can be split into chunks.
struct SymmetricGroupRange {
  int n;
  explicit SymmetricGroupRange(int n_) : n(n_) { check_enum_size(n_); }
  uint64_t total() const { return factorial(n); }
  Perm at(uint64_t index) const { return perm_unrank(n, index); }
};

// The index-th sampled permutation for a (seed, index) pair: Fisher-Yates
// driven by SplitMix64 seeded with mix(seed ^ mix(index + 1)). Counter-based,
// so any index can be generated without generating its predecessors.
inline Perm sampled_perm(int n, uint64_t seed, uint64_t index) {
  SplitMix64 rng(SplitMix64::mix(seed ^ SplitMix64::mix(index + 1)));
  Perm p = identity_perm(n);
  shuffle(p.data(), n, rng);
  return p;
}

} // namespace bdmg

#endif
