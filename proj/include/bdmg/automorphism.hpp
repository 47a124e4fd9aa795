#ifndef BDMG_AUTOMORPHISM_HPP
#define BDMG_AUTOMORPHISM_HPP

#include <vector>

#include "bdmg/graph.hpp"
#include "bdmg/permutation.hpp"

namespace bdmg {

// All γ with (γ(u),γ(v)) ∈ E ⟺ (u,v) ∈ E, by backtracking over vertex
// images with degree and adjacency-consistency pruning. Sorted by rank
// (lexicographic), so the identity comes first. Guarded at n <= 13.
std::vector<Perm> automorphism_group(const Graph& g);

} // namespace bdmg

#endif
