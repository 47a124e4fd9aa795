#include "bdmg/report.hpp"

#include <charconv>
#include <fstream>

#include "bdmg/errors.hpp"

namespace bdmg {

std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) fail(Errc::io_error, "double formatting failed");
  return std::string(buf, end);
}

namespace {

nlohmann::json edge_json(VertexPair e) { return nlohmann::json::array({e.first, e.second}); }

int part_of_edge(const std::optional<CompositeGraph>& composite, VertexPair e) {
  if (!composite) return 0;
  if (e == composite->connecting) return 0;
  return composite->part_of(e.first);
}

nlohmann::json entries_json(const EdgeInfoReport& report,
                            const std::optional<CompositeGraph>& composite) {
  nlohmann::json arr = nlohmann::json::array();
  int rank = 1;
  for (const EdgeInfo& x : report.entries) {
    arr.push_back({{"u", x.edge.first},
                   {"v", x.edge.second},
                   {"part", part_of_edge(composite, x.edge)},
                   {"avg_info", x.avg_info},
                   {"rank", rank++}});
  }
  return arr;
}

nlohmann::json graph_json(const Graph& g, const std::optional<CompositeGraph>& composite) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto e : g.edges) edges.push_back(edge_json(e));
  nlohmann::json j{{"n", g.n}, {"edges", edges}, {"hash", graph_hash(g)}};
  if (composite) {
    j["connecting"] = edge_json(composite->connecting);
    j["part2_offset"] = composite->part2_offset;
  } else {
    j["connecting"] = nullptr;
    j["part2_offset"] = nullptr;
  }
  return j;
}

// Only what reproduction needs: results are worker-count independent, so the
// worker count stays out (it would be the one config field breaking report
// identity across runs).
nlohmann::json config_json(const ReportContext& ctx) {
  nlohmann::json j{{"graph", ctx.graph_name},
                   {"perm", perm_kind_name(ctx.source.kind)},
                   {"block_size", ctx.block_side},
                   {"ctm", ctx.ctm_origin}};
  if (ctx.source.kind == PermKind::random_sample) {
    j["sample_size"] = ctx.source.sample_size;
    j["seed"] = ctx.source.seed;
  }
  if (ctx.max_rounds) j["max_rounds"] = *ctx.max_rounds;
  return j;
}

nlohmann::json analysis_json(const AnalysisResult& a) {
  nlohmann::json runs = nlohmann::json::array();
  for (auto [part, len] : a.grouping.runs) runs.push_back({{"part", part}, {"len", len}});
  return {{"connecting_is_max", a.connecting_is_max},
          {"rank_of_connecting", a.rank_of_connecting},
          {"grouping", grouping_name(a.grouping.label)},
          {"runs", runs},
          {"max_same_part_run", a.grouping.max_same_part_run},
          {"distance", a.distance},
          {"passes_log2", a.passes_log2}};
}

} // namespace

nlohmann::json analysis_report_json(const ReportContext& ctx, const Graph& g,
                                    const std::optional<CompositeGraph>& composite,
                                    const EdgeInfoReport& report,
                                    const std::optional<AnalysisResult>& analysis,
                                    uint64_t aut_order, double elapsed_sec) {
  const RunStats stats = run_stats(report, elapsed_sec);
  nlohmann::json j;
  j["schema"] = 1;
  j["code_version"] = kCodeVersion;
  j["kind"] = "analyze";
  j["config"] = config_json(ctx);
  j["graph"] = graph_json(g, composite);
  j["table"] = {{"side", report.block_side}, {"source_id", report.table_source}};
  j["perm_count"] = report.perm_count;
  if (report.source_kind == PermKind::automorphic_subsets) {
    j["subset_count"] = report.perm_count;
    j["aut_order"] = aut_order;
  }
  j["entries"] = entries_json(report, composite);
  j["analysis"] = analysis ? analysis_json(*analysis) : nlohmann::json(nullptr);
  j["stats"] = {{"max_info_edge", edge_json(stats.max_info_edge)}, {"top_gap", stats.top_gap}};
  j["timing"] = {{"elapsed_sec", stats.elapsed_sec}, {"perms_per_sec", stats.perms_per_sec}};
  return j;
}

nlohmann::json deconvolve_report_json(const ReportContext& ctx, const Graph& g,
                                      const std::optional<CompositeGraph>& composite,
                                      const DeconvolveResult& result, double elapsed_sec) {
  nlohmann::json j;
  j["schema"] = 1;
  j["code_version"] = kCodeVersion;
  j["kind"] = "deconvolve";
  j["config"] = config_json(ctx);
  j["graph"] = graph_json(g, composite);
  nlohmann::json rounds = nlohmann::json::array();
  for (const DeconvolveRound& r : result.rounds) {
    nlohmann::json rj;
    rj["perm_count"] = r.report.perm_count;
    rj["entries"] = entries_json(r.report, composite);
    rj["gap"] = r.gap;
    rj["removed"] = r.removed;
    if (r.removed) rj["removed_edge"] = edge_json(r.removed_edge);
    rounds.push_back(std::move(rj));
  }
  j["rounds"] = rounds;
  nlohmann::json removed = nlohmann::json::array();
  for (auto e : result.removed_edges) removed.push_back(edge_json(e));
  j["removed_edges"] = removed;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : result.components) comps.push_back(c);
  j["components"] = comps;
  j["timing"] = {{"elapsed_sec", elapsed_sec}};
  return j;
}

std::string report_csv(const EdgeInfoReport& report,
                       const std::optional<CompositeGraph>& composite) {
  std::string out = "edge_u,edge_v,part,avg_info,rank\n";
  int rank = 1;
  for (const EdgeInfo& x : report.entries) {
    out += std::to_string(x.edge.first);
    out += ',';
    out += std::to_string(x.edge.second);
    out += ',';
    out += std::to_string(part_of_edge(composite, x.edge));
    out += ',';
    out += format_double(x.avg_info);
    out += ',';
    out += std::to_string(rank++);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write file: " + path);
  out << content;
  if (!out) fail(Errc::io_error, "write failed: " + path);
}

} // namespace bdmg
