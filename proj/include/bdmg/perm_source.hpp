#ifndef BDMG_PERM_SOURCE_HPP
#define BDMG_PERM_SOURCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bdmg/graph.hpp"
#include "bdmg/permutation.hpp"

namespace bdmg {

enum class PermKind { symmetric_group, automorphic_subsets, random_sample };

const char* perm_kind_name(PermKind k);

// A declared set of permutations to average over. total is the exact number
// the source will yield; the perturbation driver checks consumption against
// it. For automorphic_subsets the full automorphism group rides along.
struct PermSource {
  PermKind kind = PermKind::symmetric_group;
  int n = 0;
  uint64_t total = 0;
  uint64_t sample_size = 0;     // random_sample
  uint64_t seed = 0;            // random_sample
  std::vector<Perm> aut;        // automorphic_subsets
  std::vector<Perm> materialized; // pre-listed permutations (e.g. a loaded cache)
};

PermSource make_symmetric_source(int n);
PermSource make_subset_source(const Graph& g);
PermSource make_sample_source(int n, uint64_t sample_size, uint64_t seed);

// How a CLI user spells a source before the graph is known.
struct SourceSpec {
  PermKind kind = PermKind::automorphic_subsets;
  uint64_t sample_size = 10000;
  uint64_t seed = 42;
};

PermSource make_source(const SourceSpec& spec, const Graph& g);

} // namespace bdmg

#endif
