#include "bdmg/analysis.hpp"

#include <algorithm>

#include "bdmg/errors.hpp"

namespace bdmg {

const char* grouping_name(Grouping g) {
  switch (g) {
    case Grouping::complete:  return "complete";
    case Grouping::partial:   return "partial";
    case Grouping::scattered: return "scattered";
  }
  return "?";
}

bool identify_max_info(const EdgeInfoReport& report, const CompositeGraph& composite) {
  if (report.entries.empty()) fail(Errc::empty_graph, "empty report");
  return report.entries[0].edge == composite.connecting;
}

GroupingResult classify_grouping(const EdgeInfoReport& report, const CompositeGraph& composite) {
  GroupingResult out;
  int part_edges[3] = {0, 0, 0};
  std::vector<int> parts; // per non-connecting entry, in sorted order
  for (const EdgeInfo& x : report.entries) {
    if (x.edge == composite.connecting) continue;
    const int p = composite.part_of(x.edge.first);
    parts.push_back(p);
    ++part_edges[p];
  }
  for (size_t i = 0; i < parts.size();) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    out.runs.push_back({parts[i], int(j - i)});
    out.max_same_part_run = std::max(out.max_same_part_run, int(j - i));
    i = j;
  }
  const int parts_with_edges = (part_edges[1] > 0) + (part_edges[2] > 0);
  if (int(out.runs.size()) == parts_with_edges && parts_with_edges > 0) {
    out.label = Grouping::complete;
    return out;
  }
  for (auto [p, len] : out.runs) {
    if (part_edges[p] > 0 && double(len) >= 0.6 * double(part_edges[p])) {
      out.label = Grouping::partial;
      return out;
    }
  }
  out.label = Grouping::scattered;
  return out;
}

AnalysisResult distance_test(const EdgeInfoReport& report, const CompositeGraph& composite) {
  if (report.entries.size() < 2) fail(Errc::invalid_spec, "distance needs at least two edges");
  AnalysisResult r;
  r.connecting_is_max = identify_max_info(report, composite);
  r.rank_of_connecting = report.rank_of(composite.connecting);
  r.grouping = classify_grouping(report, composite);
  const size_t pos = size_t(r.rank_of_connecting) - 1;
  r.distance = pos + 1 < report.entries.size()
                   ? report.entries[pos].avg_info - report.entries[pos + 1].avg_info
                   : 0.0;
  r.passes_log2 = r.connecting_is_max && r.distance > 1.0;
  return r;
}

DeconvolveResult deconvolve(const Graph& g, const SourceSpec& source, const CtmTable& table,
                            int max_rounds, const RunOptions& options) {
  if (g.n < 1) fail(Errc::empty_graph, "empty graph");
  DeconvolveResult out;
  Graph cur = g;
  for (int round = 0; round < max_rounds; ++round) {
    if (cur.edges.empty()) break;
    RunOptions round_options = options;
    if (!options.checkpoint_path.empty())
      round_options.checkpoint_path = options.checkpoint_path + ".round" + std::to_string(round);
    DeconvolveRound r;
    r.report = average_info(cur, make_source(source, cur), table, round_options);
    r.gap = r.report.entries.size() > 1
                ? r.report.entries[0].avg_info - r.report.entries[1].avg_info
                : 0.0;
    // removable only when ranked first by a margin of more than one bit
    if (r.gap > 1.0) {
      r.removed = true;
      r.removed_edge = r.report.entries[0].edge;
      cur = remove_edge(cur, r.removed_edge);
      out.removed_edges.push_back(r.removed_edge);
      out.rounds.push_back(std::move(r));
    } else {
      out.rounds.push_back(std::move(r));
      break;
    }
  }
  out.final_graph = cur;
  out.components = connected_components(cur);
  return out;
}

} // namespace bdmg
