#include "bdmg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bdmg/errors.hpp"
#include "bdmg/rng.hpp"

namespace bdmg {

int Graph::degree(int v) const {
  return __builtin_popcountll(adj[size_t(v)]);
}

Graph Graph::from_edges(int n, std::vector<VertexPair> e) {
  if (n < 1) fail(Errc::invalid_spec, "graph needs at least one vertex");
  if (n > 64) fail(Errc::too_large, "graphs are limited to 64 vertices");
  Graph g;
  g.n = n;
  g.adj.assign(size_t(n), 0);
  for (auto& [u, v] : e) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail(Errc::bad_format, "edge endpoint out of range");
    if (u == v) fail(Errc::bad_format, "self-loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(e.begin(), e.end());
  if (std::adjacent_find(e.begin(), e.end()) != e.end())
    fail(Errc::bad_format, "duplicate edge");
  g.edges = std::move(e);
  for (auto [u, v] : g.edges) {
    g.adj[size_t(u)] |= 1ull << v;
    g.adj[size_t(v)] |= 1ull << u;
  }
  return g;
}

uint64_t graph_hash(const Graph& g) {
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  mix(uint64_t(g.n));
  for (auto [u, v] : g.edges) mix((uint64_t(u) << 32) | uint64_t(v));
  return h;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::complete:        return "complete";
    case Family::cycle:           return "cycle";
    case Family::star:            return "star";
    case Family::ladder:          return "ladder";
    case Family::erdos_renyi:     return "erdos_renyi";
    case Family::barabasi_albert: return "barabasi_albert";
    case Family::watts_strogatz:  return "watts_strogatz";
  }
  return "?";
}

namespace {

Graph make_complete(int k) {
  std::vector<VertexPair> e;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) e.push_back({u, v});
  return Graph::from_edges(k, std::move(e));
}

Graph make_cycle(int k) {
  if (k < 3) fail(Errc::invalid_spec, "cycle needs k >= 3");
  std::vector<VertexPair> e;
  for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
  return Graph::from_edges(k, std::move(e));
}

Graph make_star(int k) {
  if (k < 2) fail(Errc::invalid_spec, "star needs k >= 2");
  std::vector<VertexPair> e;
  const int hub = k - 1;
  for (int i = 0; i < hub; ++i) e.push_back({i, hub});
  return Graph::from_edges(k, std::move(e));
}

// 2 x (k/2) grid. Columns are labeled nearest-to-center first (ties to the
// left), row 0 then row 1 within a column, so vertex 0 sits on the middle
// rung whenever the column count is odd.
Graph make_ladder(int k) {
  if (k < 4 || k % 2 != 0) fail(Errc::invalid_spec, "ladder needs even k >= 4");
  const int cols = k / 2;
  const int mid = (cols - 1) / 2;
  std::vector<int> col_order;
  for (int c = 0; c < cols; ++c) col_order.push_back(c);
  std::sort(col_order.begin(), col_order.end(), [mid](int a, int b) {
    const int da = std::abs(a - mid), db = std::abs(b - mid);
    return da != db ? da < db : a < b;
  });
  std::vector<int> label(size_t(cols) * 2, 0);
  int next = 0;
  for (int c : col_order) {
    label[size_t(c) * 2 + 0] = next++; // row 0
    label[size_t(c) * 2 + 1] = next++; // row 1
  }
  auto id = [&](int r, int c) { return label[size_t(c) * 2 + size_t(r)]; };
  std::vector<VertexPair> e;
  for (int c = 0; c < cols; ++c) e.push_back({id(0, c), id(1, c)});
  for (int c = 0; c + 1 < cols; ++c) {
    e.push_back({id(0, c), id(0, c + 1)});
    e.push_back({id(1, c), id(1, c + 1)});
  }
  return Graph::from_edges(k, std::move(e));
}

// Pair order (0,1),(0,2),...,(0,k-1),(1,2),...; one unit draw per pair.
Graph make_erdos_renyi(int k, double p, uint64_t seed) {
  if (k < 1) fail(Errc::invalid_spec, "erdos_renyi needs k >= 1");
  if (p < 0.0 || p > 1.0) fail(Errc::invalid_spec, "erdos_renyi needs p in [0,1]");
  SplitMix64 rng(seed);
  std::vector<VertexPair> e;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if (rng.next_unit() < p) e.push_back({u, v});
  return Graph::from_edges(k, std::move(e));
}

// Complete seed graph on vertices 0..m-1; each later vertex attaches to m
// distinct targets drawn by degree-weighted sampling without replacement
// (cumulative scan over next_below(total weight); duplicates redrawn;
// uniform draw when every candidate degree is zero). Degrees are frozen
// while one vertex picks its targets.
Graph make_barabasi_albert(int k, int m, uint64_t seed) {
  if (m < 1) fail(Errc::invalid_spec, "barabasi_albert needs m >= 1");
  if (k < m) fail(Errc::invalid_spec, "barabasi_albert needs k >= m");
  SplitMix64 rng(seed);
  std::vector<VertexPair> e;
  std::vector<int> deg(size_t(k), 0);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) {
      e.push_back({u, v});
      ++deg[size_t(u)];
      ++deg[size_t(v)];
    }
  for (int v = m; v < k; ++v) {
    uint64_t total = 0;
    for (int u = 0; u < v; ++u) total += uint64_t(deg[size_t(u)]);
    std::vector<int> targets;
    while (int(targets.size()) < std::min(m, v)) {
      int pick;
      if (total == 0) {
        pick = int(rng.next_below(uint64_t(v)));
      } else {
        uint64_t r = rng.next_below(total);
        pick = 0;
        while (r >= uint64_t(deg[size_t(pick)])) {
          r -= uint64_t(deg[size_t(pick)]);
          ++pick;
        }
      }
      if (std::find(targets.begin(), targets.end(), pick) == targets.end())
        targets.push_back(pick);
    }
    for (int t : targets) {
      e.push_back({t, v});
      ++deg[size_t(t)];
      ++deg[size_t(v)];
    }
  }
  return Graph::from_edges(k, std::move(e));
}

// k_deg/2-neighbor ring, then one rewiring pass: clockwise edges (i, i+j) are
// visited j-major (j = 1..k_deg/2, i = 0..k-1) and rewired with probability p
// to a next_below(k) target, redrawn while it would form a self-loop or a
// duplicate; vertices already adjacent to everyone keep their edge.
Graph make_watts_strogatz(int k, int k_deg, double p, uint64_t seed) {
  if (k_deg < 2 || k_deg % 2 != 0) fail(Errc::invalid_spec, "watts_strogatz needs even k_deg >= 2");
  if (k_deg >= k) fail(Errc::invalid_spec, "watts_strogatz needs k_deg < k");
  if (p < 0.0 || p > 1.0) fail(Errc::invalid_spec, "watts_strogatz needs p in [0,1]");
  SplitMix64 rng(seed);
  std::vector<uint64_t> adj(size_t(k), 0);
  auto link = [&](int a, int b) {
    adj[size_t(a)] |= 1ull << b;
    adj[size_t(b)] |= 1ull << a;
  };
  auto unlink = [&](int a, int b) {
    adj[size_t(a)] &= ~(1ull << b);
    adj[size_t(b)] &= ~(1ull << a);
  };
  for (int j = 1; j <= k_deg / 2; ++j)
    for (int i = 0; i < k; ++i) link(i, (i + j) % k);
  for (int j = 1; j <= k_deg / 2; ++j)
    for (int i = 0; i < k; ++i) {
      const int old = (i + j) % k;
      if (rng.next_unit() >= p) continue;
      if (__builtin_popcountll(adj[size_t(i)]) >= k - 1) continue;
      int t;
      do {
        t = int(rng.next_below(uint64_t(k)));
      } while (t == i || ((adj[size_t(i)] >> t) & 1u));
      unlink(i, old);
      link(i, t);
    }
  std::vector<VertexPair> e;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if ((adj[size_t(u)] >> v) & 1u) e.push_back({u, v});
  return Graph::from_edges(k, std::move(e));
}

} // namespace

Graph generate(const GeneratorSpec& spec) {
  if (spec.k < 1) fail(Errc::invalid_spec, "vertex count must be >= 1");
  switch (spec.family) {
    case Family::complete:        return make_complete(spec.k);
    case Family::cycle:           return make_cycle(spec.k);
    case Family::star:            return make_star(spec.k);
    case Family::ladder:          return make_ladder(spec.k);
    case Family::erdos_renyi:     return make_erdos_renyi(spec.k, spec.p, spec.seed);
    case Family::barabasi_albert: return make_barabasi_albert(spec.k, spec.m, spec.seed);
    case Family::watts_strogatz:  return make_watts_strogatz(spec.k, spec.k_deg, spec.p, spec.seed);
  }
  fail(Errc::invalid_spec, "unknown family");
}

CompositeGraph connect(const Graph& g1, const Graph& g2, int attach1, int attach2) {
  if (g1.n < 1 || g2.n < 1) fail(Errc::invalid_spec, "connect needs nonempty graphs");
  if (attach1 < 0 || attach1 >= g1.n || attach2 < 0 || attach2 >= g2.n)
    fail(Errc::invalid_spec, "attachment vertex out of range");
  const int n1 = g1.n;
  std::vector<VertexPair> e = g1.edges;
  for (auto [u, v] : g2.edges) e.push_back({u + n1, v + n1});
  e.push_back({attach1, attach2 + n1});
  CompositeGraph c;
  c.graph = Graph::from_edges(n1 + g2.n, std::move(e));
  c.part2_offset = n1;
  c.connecting = {attach1, attach2 + n1};
  return c;
}

Graph remove_edge(const Graph& g, VertexPair e) {
  if (e.first > e.second) std::swap(e.first, e.second);
  auto it = std::find(g.edges.begin(), g.edges.end(), e);
  if (it == g.edges.end())
    fail(Errc::edge_not_found, "edge (" + std::to_string(e.first) + "," +
                                   std::to_string(e.second) + ") is not in the graph");
  std::vector<VertexPair> edges = g.edges;
  edges.erase(edges.begin() + (it - g.edges.begin()));
  return Graph::from_edges(g.n, std::move(edges));
}

BitMatrix adjacency_matrix(const Graph& g, const Perm& perm) {
  BitMatrix m(g.n);
  for (auto [u, v] : g.edges) {
    const int a = perm[size_t(u)], b = perm[size_t(v)];
    m.set(a, b, 1);
    m.set(b, a, 1);
  }
  return m;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> out;
  uint64_t seen = 0;
  for (int s = 0; s < g.n; ++s) {
    if ((seen >> s) & 1u) continue;
    uint64_t comp = 1ull << s;
    uint64_t frontier = comp;
    while (frontier) {
      uint64_t next = 0;
      for (int v = 0; v < g.n; ++v)
        if ((frontier >> v) & 1u) next |= g.adj[size_t(v)];
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    std::vector<int> vs;
    for (int v = 0; v < g.n; ++v)
      if ((comp >> v) & 1u) vs.push_back(v);
    out.push_back(std::move(vs));
  }
  return out;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "n " << g.n << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << "\n";
}

void write_composite(std::ostream& out, const CompositeGraph& c) {
  write_graph(out, c.graph);
  out << "connecting " << c.connecting.first << " " << c.connecting.second << "\n";
  out << "part2_offset " << c.part2_offset << "\n";
}

std::string to_string(const Graph& g) {
  std::ostringstream ss;
  write_graph(ss, g);
  return ss.str();
}

GraphFile read_graph_file(std::istream& in) {
  GraphFile out;
  std::string line;
  int n = -1;
  std::vector<VertexPair> edges;
  bool have_connecting = false, have_offset = false;
  VertexPair connecting{0, 0};
  int offset = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    auto want_int = [&](int& dst) {
      if (!(ss >> dst))
        fail(Errc::bad_format, "line " + std::to_string(lineno) + ": expected an integer");
    };
    if (tok == "n") {
      if (n >= 0) fail(Errc::bad_format, "duplicate n line");
      want_int(n);
      if (n < 1) fail(Errc::bad_format, "n must be >= 1");
    } else if (tok == "connecting") {
      want_int(connecting.first);
      want_int(connecting.second);
      have_connecting = true;
    } else if (tok == "part2_offset") {
      want_int(offset);
      have_offset = true;
    } else {
      int u = 0, v = 0;
      try {
        u = std::stoi(tok);
      } catch (...) {
        fail(Errc::bad_format, "line " + std::to_string(lineno) + ": unexpected token '" + tok + "'");
      }
      want_int(v);
      edges.push_back({u, v});
    }
  }
  if (n < 0) fail(Errc::bad_format, "missing 'n <count>' line");
  out.graph = Graph::from_edges(n, std::move(edges));
  if (have_connecting != have_offset)
    fail(Errc::bad_format, "composite files need both 'connecting' and 'part2_offset'");
  if (have_connecting) {
    if (offset < 1 || offset >= n) fail(Errc::bad_format, "part2_offset out of range");
    CompositeGraph c;
    c.graph = out.graph;
    c.part2_offset = offset;
    c.connecting = connecting;
    if (c.connecting.first > c.connecting.second) std::swap(c.connecting.first, c.connecting.second);
    if (c.part_of(c.connecting.first) != 1 || c.part_of(c.connecting.second) != 2)
      fail(Errc::bad_format, "connecting edge must join part 1 to part 2");
    if (!c.graph.has_edge(c.connecting.first, c.connecting.second))
      fail(Errc::bad_format, "connecting edge is not in the graph");
    int crossing = 0;
    for (auto [u, v] : c.graph.edges) crossing += c.part_of(u) != c.part_of(v);
    if (crossing != 1)
      fail(Errc::bad_format, "composite must have exactly one edge between parts");
    out.is_composite = true;
    out.composite = std::move(c);
  }
  return out;
}

GraphFile load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open graph file: " + path);
  return read_graph_file(in);
}

} // namespace bdmg
