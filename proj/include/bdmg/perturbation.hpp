#ifndef BDMG_PERTURBATION_HPP
#define BDMG_PERTURBATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bdmg/ctm_table.hpp"
#include "bdmg/graph.hpp"
#include "bdmg/perm_source.hpp"

namespace bdmg {

struct EdgeInfo {
  VertexPair edge;      // original labels
  double avg_info = 0;  // bits
};

// Per-edge average information contribution, sorted by avg_info descending,
// ties by (min endpoint, max endpoint) ascending. Covers every edge exactly once.
struct EdgeInfoReport {
  std::vector<EdgeInfo> entries;
  uint64_t perm_count = 0;
  PermKind source_kind = PermKind::symmetric_group;
  int block_side = 3;
  std::string table_source;
  uint64_t graph_hash = 0;

  double value_of(VertexPair e) const;
  int rank_of(VertexPair e) const; // 1-based position in entries
};

struct RunOptions {
  int workers = 0;                       // 0 = hardware concurrency
  uint64_t chunk_size = 1ull << 15;      // permutations per accumulation chunk
  std::string checkpoint_path;           // empty = no checkpointing
  uint64_t checkpoint_every = 1ull << 20; // permutations between checkpoint writes
  uint64_t stop_after_chunks = 0;        // nonzero: abort after N chunks (resume test hook)
};

// One-permutation contribution of one (permuted) edge: base_bdm minus the bdm
// of the permuted adjacency with that edge removed. Positive = removal loses
// information.
double edge_info_single(const Graph& g, const Perm& perm, VertexPair edge_permuted,
                        const CtmTable& table, double base_bdm);

// Algorithm core: for every permutation of the source, perturb every edge of
// the permuted graph, map the contribution back to the original edge through
// the inverse permutation, average by the source size, sort.
//
// Determinism: permutations are processed in fixed chunks of
// options.chunk_size; each chunk accumulates per-edge sums with compensated
// (Neumaier) summation, and finished chunks are folded in ascending chunk
// order regardless of which worker computed them, so the report is
// bit-identical for any worker count.
EdgeInfoReport average_info(const Graph& g, const PermSource& source, const CtmTable& table,
                            const RunOptions& options = {});

// avg over S_G of edge e equals the mean over e's Aut(G)-orbit of the
// automorphic-subset averages (the S_G sum factors through the cosets).
// Computes the S_G report at |Λ(G)| cost; exact up to float assocativity.
EdgeInfoReport average_info_sym_via_subsets(const Graph& g, const CtmTable& table,
                                            const RunOptions& options = {});

struct RunStats {
  VertexPair max_info_edge{0, 0};
  double top_gap = 0;       // entries[0] - entries[1], 0 for a single edge
  double elapsed_sec = 0;
  double perms_per_sec = 0;
};

RunStats run_stats(const EdgeInfoReport& report, double elapsed_sec = 0);

} // namespace bdmg

#endif
