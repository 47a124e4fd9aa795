#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <set>

#include "bdmg/automorphism.hpp"
#include "bdmg/errors.hpp"
#include "bdmg/perm_source.hpp"
#include "bdmg/subsets.hpp"
#include "oracles.hpp"

using namespace bdmg;

TEST_CASE("symmetric group enumeration is exact and lexicographic") {
  SymmetricGroupRange r3(3);
  CHECK(r3.total() == 6);
  std::set<Perm> seen;
  Perm p = identity_perm(3);
  uint64_t idx = 0;
  do {
    CHECK(r3.at(idx) == p); // unranking matches iteration order
    CHECK(perm_rank(p) == idx);
    seen.insert(p);
    ++idx;
  } while (next_perm(p));
  CHECK(seen.size() == 6);

  SymmetricGroupRange r1(1);
  CHECK(r1.total() == 1);
  CHECK(r1.at(0) == identity_perm(1));

  CHECK(SymmetricGroupRange(9).total() == 362880);
  CHECK_THROWS_AS(SymmetricGroupRange(14), Error);
}

TEST_CASE("unranking splits the index range consistently (n=9 spot checks)") {
  SymmetricGroupRange r(9);
  for (uint64_t idx : {uint64_t(0), uint64_t(1), uint64_t(5039), uint64_t(181440), r.total() - 1}) {
    const Perm p = r.at(idx);
    CHECK(perm_rank(p) == idx);
    CHECK(is_permutation(p));
  }
  // the full n=9 walk really yields 9! permutations
  uint64_t count = 0;
  Perm p = identity_perm(9);
  do {
    ++count;
  } while (next_perm(p));
  CHECK(count == 362880);
  CHECK(count == r.total());
}

TEST_CASE("inverse") {
  CHECK(inverse(identity_perm(4)) == identity_perm(4));
  CHECK(inverse(Perm{1, 2, 0}) == Perm{2, 0, 1});
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Perm p = sampled_perm(8, 5, uint64_t(trial));
    CHECK(compose(inverse(p), p) == identity_perm(8));
    CHECK(compose(p, inverse(p)) == identity_perm(8));
    CHECK(inverse(inverse(p)) == p);
  }
}

TEST_CASE("automorphism groups of known graphs") {
  CHECK(automorphism_group(generate({Family::complete, 3})).size() == 6);
  const Graph path3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const auto a = automorphism_group(path3);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == identity_perm(3));
  CHECK(a[1] == Perm{2, 1, 0});

  const CompositeGraph c = connect(generate({Family::complete, 5}), generate({Family::star, 5}));
  CHECK(automorphism_group(c.graph).size() == 144);
}

TEST_CASE("automorphism group is brute-force exact for small random graphs") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = bdmg_test::random_graph(5 + int(trial % 2), rng);
    std::set<Perm> brute;
    Perm p = identity_perm(g.n);
    do {
      bool ok = true;
      for (int u = 0; u < g.n && ok; ++u)
        for (int v = u + 1; v < g.n && ok; ++v)
          if (g.has_edge(u, v) != g.has_edge(p[size_t(u)], p[size_t(v)])) ok = false;
      if (ok) brute.insert(p);
    } while (next_perm(p));
    const auto found = automorphism_group(g);
    CHECK(found.size() == brute.size());
    for (const Perm& q : found) CHECK(brute.count(q) == 1);
  }
}

TEST_CASE("group closure: identity, inverses, composition") {
  SplitMix64 rng(5);
  const Graph g = bdmg_test::random_graph(6, rng);
  const auto a = automorphism_group(g);
  std::set<Perm> s(a.begin(), a.end());
  CHECK(s.count(identity_perm(g.n)) == 1);
  for (const Perm& x : a) {
    CHECK(s.count(inverse(x)) == 1);
    for (const Perm& y : a) CHECK(s.count(compose(x, y)) == 1);
  }
}

TEST_CASE("subset representatives: complete graphs collapse to one subset") {
  const Graph k4 = generate({Family::complete, 4});
  SubsetRepStream stream(k4, automorphism_group(k4));
  CHECK(stream.total() == 1);
  const auto reps = stream.collect();
  REQUIRE(reps.size() == 1);
  CHECK(reps[0] == identity_perm(4));
}

TEST_CASE("subset stream equals the scan oracle exactly") {
  SplitMix64 rng(17);
  // assorted structure: random, path, star composite, cycle
  std::vector<Graph> graphs;
  for (int trial = 0; trial < 8; ++trial) graphs.push_back(bdmg_test::random_graph(6, rng));
  graphs.push_back(generate({Family::cycle, 6}));
  graphs.push_back(generate({Family::star, 6}));
  graphs.push_back(bdmg_test::random_composite(3, 4, rng).graph);
  graphs.push_back(generate({Family::ladder, 6}));
  for (const Graph& g : graphs) {
    const auto scan = representatives_by_scan(g);
    const auto stream = SubsetRepStream(g, automorphism_group(g)).collect();
    REQUIRE(stream.size() == scan.size());
    CHECK(stream == scan); // same representatives in the same order
  }
}

TEST_CASE("coset identity holds for random graphs up to n=8") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + int(rng.next_below(5));
    const Graph g = bdmg_test::random_graph(n, rng, 0.4);
    const auto aut = automorphism_group(g);
    SubsetRepStream stream(g, aut);
    CHECK(stream.total() * aut.size() == factorial(n));
    CHECK(stream.count_by_enumeration() == stream.total());
  }
}

TEST_CASE("keying equivalence, exhaustively at n=5") {
  SplitMix64 rng(31);
  const Graph g = bdmg_test::random_graph(5, rng);
  const auto aut = automorphism_group(g);
  std::set<Perm> aut_set(aut.begin(), aut.end());

  // subset id by scan order
  std::map<std::string, int> subset_of;
  std::vector<Perm> all;
  Perm p = identity_perm(5);
  do {
    all.push_back(p);
  } while (next_perm(p));
  auto matrix_of = [&](const Perm& q) {
    std::string s;
    const BitMatrix m = adjacency_matrix(g, q);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) s += char('0' + m.get(i, j));
    return s;
  };
  for (const Perm& q : all) {
    const std::string key = matrix_of(q);
    subset_of.emplace(key, int(subset_of.size()));
  }
  for (const Perm& x : all)
    for (const Perm& y : all) {
      const bool same_matrix = matrix_of(x) == matrix_of(y);
      const bool coset = aut_set.count(compose(inverse(y), x)) == 1;
      CHECK(same_matrix == coset);
    }
  // the subsets partition S_G
  CHECK(subset_of.size() == factorial(5) / aut.size());
}

TEST_CASE("sampled permutations are valid, deterministic, and seed-sensitive") {
  for (uint64_t i = 0; i < 50; ++i) {
    const Perm p = sampled_perm(9, 7, i);
    CHECK(is_permutation(p));
    CHECK(sampled_perm(9, 7, i) == p);
  }
  CHECK(sampled_perm(9, 7, 0) != sampled_perm(9, 8, 0));
  CHECK(sampled_perm(1, 3, 2) == identity_perm(1));
}

TEST_CASE("sampled fixed-point mean matches the derangement statistic") {
  const uint64_t k = 10000;
  uint64_t fixed = 0;
  for (uint64_t i = 0; i < k; ++i) {
    const Perm p = sampled_perm(9, 123, i);
    for (size_t j = 0; j < p.size(); ++j) fixed += p[j] == j;
  }
  const double mean = double(fixed) / double(k);
  CHECK(mean == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("representative cache round-trips and validates") {
  const CompositeGraph c = connect(generate({Family::complete, 4}), generate({Family::cycle, 3}));
  const auto aut = automorphism_group(c.graph);
  const std::string path = (std::filesystem::temp_directory_path() / "bdmg_repcache_test.txt").string();
  save_rep_cache(path, c.graph, aut);
  const auto loaded = load_rep_cache(path, c.graph);
  CHECK(loaded == SubsetRepStream(c.graph, aut).collect());

  const Graph other = generate({Family::cycle, 7});
  CHECK_THROWS_AS((void)load_rep_cache(path, other), Error);
  std::remove(path.c_str());
}

TEST_CASE("perm source construction and guards") {
  const Graph g = generate({Family::cycle, 5});
  const PermSource sym = make_symmetric_source(5);
  CHECK(sym.total == 120);
  const PermSource aut = make_subset_source(g);
  CHECK(aut.total == 12); // 5!/|D5|
  CHECK(aut.aut.size() == 10);
  const PermSource sample = make_sample_source(5, 42, 1);
  CHECK(sample.total == 42);
  CHECK_THROWS_AS((void)make_symmetric_source(14), Error);
  CHECK_THROWS_AS((void)make_sample_source(5, 0, 1), Error);
}
