#include "bdmg/suite.hpp"

#include "bdmg/errors.hpp"

namespace bdmg {

namespace {

GeneratorSpec complete(int k) { return {Family::complete, k}; }
GeneratorSpec cycle(int k) { return {Family::cycle, k}; }
GeneratorSpec star(int k) { return {Family::star, k}; }
GeneratorSpec ladder(int k) { return {Family::ladder, k}; }
GeneratorSpec random_g(int k) { return {Family::erdos_renyi, k, 0.5}; }
GeneratorSpec ba(int k) {
  GeneratorSpec s{Family::barabasi_albert, k};
  s.m = 2;
  return s;
}
GeneratorSpec ws(int k) {
  GeneratorSpec s{Family::watts_strogatz, k, 0.5};
  s.k_deg = 4;
  return s;
}

std::vector<SuiteRow> build_rows() {
  std::vector<SuiteRow> r;
  auto row = [&](std::string name, GeneratorSpec p1, GeneratorSpec p2, int n, int e,
                 uint64_t subsets, int attach1 = 0, int attach2 = 0) {
    r.push_back({std::move(name), p1, p2, attach1, attach2, n, e, subsets});
  };
  row("complete4-cycle5", complete(4), cycle(5), 9, 12, 30240);
  row("complete5-cycle4", complete(5), cycle(4), 9, 15, 7560);
  row("complete4-random5", complete(4), random_g(5), 9, 0, 0);
  row("complete5-cycle5", complete(5), cycle(5), 10, 16, 75600);
  row("complete5-star5", complete(5), star(5), 10, 15, 25200);
  row("complete5-complete5", complete(5), complete(5), 10, 21, 3150);
  row("star5-random5", star(5), random_g(5), 10, 0, 0);
  row("random5-random5", random_g(5), random_g(5), 10, 0, 0);
  row("cycle5-star5", cycle(5), star(5), 10, 10, 302400);
  row("cycle4-star6", cycle(4), star(6), 10, 10, 75600);
  // the published subset count for this row implies a corner attachment on
  // the ladder side, unlike the ladder-first rows; reproduced as published
  row("cycle5-ladder6", cycle(5), ladder(6), 11, 13, 19958400, 0, 2);
  row("cycle5-random6", cycle(5), random_g(6), 11, 0, 0);
  row("watts-strogatz6-cycle5", ws(6), cycle(5), 11, 18, 0);
  row("complete5-random6", complete(5), random_g(6), 11, 0, 0);
  row("cycle5-star6", cycle(5), star(6), 11, 11, 831600);
  row("watts-strogatz6-complete5", ws(6), complete(5), 11, 23, 0);
  row("watts-strogatz6-star5", ws(6), star(5), 11, 17, 0);
  row("barabasi-albert7-complete4", ba(7), complete(4), 11, 18, 0);
  row("barabasi-albert7-cycle4", ba(7), cycle(4), 11, 16, 0);
  row("barabasi-albert6-random5", ba(6), random_g(5), 11, 0, 0);
  row("random6-random5", random_g(6), random_g(5), 11, 0, 0);
  row("complete6-complete5", complete(6), complete(5), 11, 26, 13860);
  row("ladder6-random5", ladder(6), random_g(5), 11, 0, 0);
  row("ladder6-complete5", ladder(6), complete(5), 11, 18, 831600);
  row("ladder6-star5", ladder(6), star(5), 11, 12, 3326400);
  row("watts-strogatz6-random6", ws(6), random_g(6), 12, 0, 0);
  row("watts-strogatz7-complete5", ws(7), complete(5), 12, 25, 0);
  row("watts-strogatz7-star5", ws(7), star(5), 12, 19, 0);
  row("barabasi-albert7-star5", ba(7), star(5), 12, 16, 0);
  row("complete6-complete6", complete(6), complete(6), 12, 31, 16632);
  return r;
}

} // namespace

const std::vector<SuiteRow>& suite_rows() {
  static const std::vector<SuiteRow> rows = build_rows();
  return rows;
}

const SuiteRow* find_suite_row(std::string_view name) {
  for (const SuiteRow& r : suite_rows())
    if (r.name == name) return &r;
  return nullptr;
}

CompositeGraph build_suite_row(const SuiteRow& row) {
  const Graph g1 = generate(row.part1);
  const Graph g2 = generate(row.part2);
  CompositeGraph c = connect(g1, g2, row.attach1, row.attach2);
  if (c.graph.n != row.expect_n)
    fail(Errc::invalid_spec, "suite row " + row.name + " built the wrong vertex count");
  if (row.expect_edges && c.graph.edge_count() != row.expect_edges)
    fail(Errc::invalid_spec, "suite row " + row.name + " built the wrong edge count");
  return c;
}

} // namespace bdmg
