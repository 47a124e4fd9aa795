#ifndef BDMG_ANALYSIS_HPP
#define BDMG_ANALYSIS_HPP

#include <string>
#include <vector>

#include "bdmg/ctm_table.hpp"
#include "bdmg/graph.hpp"
#include "bdmg/perm_source.hpp"
#include "bdmg/perturbation.hpp"

namespace bdmg {

enum class Grouping { complete, partial, scattered };

const char* grouping_name(Grouping g);

// Classification of how each part's edges cluster in the sorted report, over
// the entries with the connecting edge removed: maximal contiguous runs of
// same-part edges. complete = exactly one run per part with edges; partial =
// some run holds >= 60% of one part's edges; scattered otherwise.
struct GroupingResult {
  Grouping label = Grouping::scattered;
  std::vector<std::pair<int, int>> runs; // (part, length) in sorted order
  int max_same_part_run = 0;             // >= 2 means at least two edges of one part cluster
};

struct AnalysisResult {
  bool connecting_is_max = false;
  int rank_of_connecting = 0;      // 1-based
  GroupingResult grouping;
  double distance = 0;             // gap from the connecting edge to its successor
  bool passes_log2 = false;        // connecting_is_max && distance > 1.0
};

bool identify_max_info(const EdgeInfoReport& report, const CompositeGraph& composite);
GroupingResult classify_grouping(const EdgeInfoReport& report, const CompositeGraph& composite);
AnalysisResult distance_test(const EdgeInfoReport& report, const CompositeGraph& composite);

// Recursive edge perturbation: each round runs average_info on the current
// graph and removes the top edge if it is both ranked first and separated
// from the runner-up by more than one bit; stops when no edge qualifies or
// max_rounds is reached.
struct DeconvolveRound {
  EdgeInfoReport report;
  bool removed = false;
  VertexPair removed_edge{0, 0};
  double gap = 0;
};

struct DeconvolveResult {
  std::vector<DeconvolveRound> rounds;
  std::vector<VertexPair> removed_edges; // in removal order
  Graph final_graph;
  std::vector<std::vector<int>> components;
};

DeconvolveResult deconvolve(const Graph& g, const SourceSpec& source, const CtmTable& table,
                            int max_rounds, const RunOptions& options = {});

} // namespace bdmg

#endif
