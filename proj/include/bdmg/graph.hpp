#ifndef BDMG_GRAPH_HPP
#define BDMG_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bdmg/bitmatrix.hpp"
#include "bdmg/permutation.hpp"

namespace bdmg {

using VertexPair = std::pair<int, int>;

// Undirected simple graph on vertices 0..n-1. Edges are kept normalized
// (u < v) and sorted, so identical graphs serialize identically; adjacency
// rows are bitmasks derived from the edge set.
struct Graph {
  int n = 0;
  std::vector<VertexPair> edges;
  std::vector<uint64_t> adj;

  bool has_edge(int u, int v) const { return u != v && ((adj[size_t(u)] >> v) & 1u); }
  int degree(int v) const;
  int edge_count() const { return int(edges.size()); }

  // Validates ranges, normalizes to (min,max), sorts; duplicates are an error.
  static Graph from_edges(int n, std::vector<VertexPair> e);
};

// 64-bit FNV-1a over n and the sorted edge list; stable across runs, used to
// match checkpoint/cache files to their graph.
uint64_t graph_hash(const Graph& g);

// Two subgraphs joined by exactly one edge. Vertices < part2_offset form
// part 1, the rest part 2; connecting joins one vertex of each.
struct CompositeGraph {
  Graph graph;
  int part2_offset = 0;
  VertexPair connecting{0, 0};

  int part_of(int v) const { return v < part2_offset ? 1 : 2; }
};

enum class Family {
  complete,
  cycle,
  star,
  ladder,
  erdos_renyi,
  barabasi_albert,
  watts_strogatz,
};

const char* family_name(Family f);

struct GeneratorSpec {
  Family family = Family::complete;
  int k = 0;              // vertex count
  double p = 0.5;         // erdos_renyi, watts_strogatz
  int m = 2;              // barabasi_albert attachments per new vertex
  int k_deg = 4;          // watts_strogatz ring degree (even)
  uint64_t seed = 42;     // random families only
};

// Deterministic generator; identical spec (including seed) gives an identical
// edge set. Fixed labelings: star has its hub at k-1 (vertex 0 is a leaf),
// cycle edges are (i, i+1 mod k), and the 2x(k/2) grid ladder is labeled
// middle-column-first so vertex 0 is a degree-3 rung vertex when one exists.
Graph generate(const GeneratorSpec& spec);

// Disjoint union with g2 shifted by n1, plus one edge between attach1 (in g1)
// and attach2 (in g2, pre-shift). Defaults join vertex 0 of each part.
CompositeGraph connect(const Graph& g1, const Graph& g2, int attach1 = 0, int attach2 = 0);

// Copy with e removed; the input is untouched.
Graph remove_edge(const Graph& g, VertexPair e);

// M[perm(u)][perm(v)] = M[perm(v)][perm(u)] = 1 for each edge (u,v).
BitMatrix adjacency_matrix(const Graph& g, const Perm& perm);

// Connected components as sorted vertex lists, sorted by first vertex.
std::vector<std::vector<int>> connected_components(const Graph& g);

// Edge-list text format: "n <count>" then one "u v" per line; composite files
// append "connecting <a> <b>" and "part2_offset <n1>". '#' starts a comment.
void write_graph(std::ostream& out, const Graph& g);
void write_composite(std::ostream& out, const CompositeGraph& c);
std::string to_string(const Graph& g);

struct GraphFile {
  Graph graph;
  bool is_composite = false;
  CompositeGraph composite; // valid when is_composite
};

GraphFile read_graph_file(std::istream& in);
GraphFile load_graph_file(const std::string& path);

} // namespace bdmg

#endif
