#ifndef BDMG_SUITE_HPP
#define BDMG_SUITE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bdmg/graph.hpp"

namespace bdmg {

// One row of the 30-composite experiment suite: two generated subgraphs
// joined by a single edge. expect_edges / expect_subsets are 0 where the
// value depends on the random seed.
struct SuiteRow {
  std::string name; // slug, e.g. "complete4-cycle5"
  GeneratorSpec part1;
  GeneratorSpec part2;
  int attach1 = 0;
  int attach2 = 0;
  int expect_n = 0;
  int expect_edges = 0;
  uint64_t expect_subsets = 0;
};

const std::vector<SuiteRow>& suite_rows();
const SuiteRow* find_suite_row(std::string_view name);
CompositeGraph build_suite_row(const SuiteRow& row);

} // namespace bdmg

#endif
