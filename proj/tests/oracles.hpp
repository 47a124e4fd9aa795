// Test-only reference implementations, kept deliberately naive and
// independent of the library's computation paths.
#ifndef BDMG_TESTS_ORACLES_HPP
#define BDMG_TESTS_ORACLES_HPP

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bdmg/bitmatrix.hpp"
#include "bdmg/ctm_table.hpp"
#include "bdmg/graph.hpp"
#include "bdmg/rng.hpp"

namespace bdmg_test {

// Explicitly build the padded matrix, tally block strings in a map, sum.
inline double bdm2d_oracle(const bdmg::BitMatrix& m, const bdmg::CtmTable& table) {
  const int n = m.size;
  const int l = table.side;
  const int pad = (l - n % l) % l;
  const int padded = n + pad;
  std::vector<std::vector<int>> big(size_t(padded), std::vector<int>(size_t(padded), 0));
  for (int i = 0; i < padded; ++i)
    for (int j = 0; j < padded; ++j) big[size_t(i)][size_t(j)] = m.get(i % n, j % n);
  std::map<std::string, int> tally;
  for (int br = 0; br < padded / l; ++br)
    for (int bc = 0; bc < padded / l; ++bc) {
      std::string block;
      for (int r = 0; r < l; ++r)
        for (int c = 0; c < l; ++c)
          block += big[size_t(br * l + r)][size_t(bc * l + c)] ? '1' : '0';
      ++tally[block];
    }
  double sum = 0;
  for (auto& [bits, count] : tally)
    sum += table.lookup(bdmg::block_key_from_string(bits, l)) + std::log2(double(count));
  return sum;
}

inline bdmg::BitMatrix random_matrix(int n, bdmg::SplitMix64& rng, double density = 0.5) {
  bdmg::BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.next_unit() < density) m.set(i, j, 1);
  return m;
}

inline bdmg::BitMatrix random_symmetric_matrix(int n, bdmg::SplitMix64& rng, double density = 0.5) {
  bdmg::BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_unit() < density) {
        m.set(i, j, 1);
        m.set(j, i, 1);
      }
  return m;
}

inline bdmg::CtmTable random_table(int side, bdmg::SplitMix64& rng) {
  bdmg::CtmTable t = bdmg::make_uniform_table(side, 1.0);
  t.source_id = "random-test";
  for (double& v : t.values) v = 0.5 + 30.0 * rng.next_unit();
  return t;
}

inline bdmg::Graph random_graph(int n, bdmg::SplitMix64& rng, double density = 0.5) {
  std::vector<bdmg::VertexPair> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_unit() < density) e.push_back({u, v});
  return bdmg::Graph::from_edges(n, std::move(e));
}

// A random composite with at least one edge per part.
inline bdmg::CompositeGraph random_composite(int n1, int n2, bdmg::SplitMix64& rng) {
  bdmg::Graph g1, g2;
  do {
    g1 = random_graph(n1, rng);
  } while (g1.edges.empty() && n1 > 1);
  do {
    g2 = random_graph(n2, rng);
  } while (g2.edges.empty() && n2 > 1);
  return bdmg::connect(g1, g2);
}

} // namespace bdmg_test

#endif
