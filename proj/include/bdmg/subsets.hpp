#ifndef BDMG_SUBSETS_HPP
#define BDMG_SUBSETS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bdmg/graph.hpp"
#include "bdmg/permutation.hpp"

namespace bdmg {

// Two permutations land in the same subset exactly when they produce the same
// labeled graph, i.e. when they lie in the same left coset of Aut(G). The
// stream below yields the lexicographically smallest member of each coset --
// the representative a full symmetric-group scan would encounter first -- in
// increasing lexicographic order, without scanning S_G: a permutation γ is
// coset-minimal iff for every position i, γ(i) < γ(p) for all p ≠ i in the
// orbit of i under the pointwise stabilizer Aut(G)_{0..i-1}. Those orbit
// constraints are fixed by the group alone, so enumeration is a constrained
// DFS over the image array. Memory is O(|Aut|·n); time is near-linear in the
// number of representatives.
class SubsetRepStream {
public:
  SubsetRepStream(const Graph& g, std::vector<Perm> aut);

  int n() const { return n_; }
  uint64_t aut_order() const { return uint64_t(aut_.size()); }
  uint64_t total() const { return total_; }

  // Calls sink(flat, count) with batches of `count` permutations packed as
  // count*n bytes, in stream order. sink returning false stops early.
  void run(size_t batch_size, const std::function<bool(const uint8_t*, size_t)>& sink) const;

  // Convenience: materialize everything (small graphs / tests).
  std::vector<Perm> collect() const;
  uint64_t count_by_enumeration() const;

private:
  int n_;
  std::vector<Perm> aut_;
  uint64_t total_ = 0;
  std::vector<std::vector<int>> preds_;  // preds_[p]: positions j < p with γ(j) < γ(p) required
  std::vector<int> succ_need_;           // |orbit_{stab(0..d-1)}(d)| - 1
  int free_depth_ = 0;                   // depth from which no constraint is active
};

// Reference implementation: scan S_G in lexicographic order and keep the
// first permutation for each distinct permuted labeled graph (key = packed
// upper triangle of the permuted adjacency matrix). O(n!) time and O(|Λ|)
// key memory -- fine for tests and small n, documented as the oracle the
// stream above is checked against.
std::vector<Perm> representatives_by_scan(const Graph& g);

// n! / |Aut(g)|.
uint64_t subset_count(const Graph& g);

// Representative cache file (text): header with graph hash, n, |Aut| and
// count, then one space-separated image array per line.
void save_rep_cache(const std::string& path, const Graph& g, const std::vector<Perm>& aut);
std::vector<Perm> load_rep_cache(const std::string& path, const Graph& g);

} // namespace bdmg

#endif
