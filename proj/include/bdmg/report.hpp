#ifndef BDMG_REPORT_HPP
#define BDMG_REPORT_HPP

#include <optional>
#include <string>

#include "bdmg/analysis.hpp"
#include "bdmg/graph.hpp"
#include "bdmg/perturbation.hpp"

#include "json.hpp"

namespace bdmg {

inline constexpr const char* kCodeVersion = "bdmg 0.1.0";

// Everything a report needs to be reproducible from its own metadata.
struct ReportContext {
  std::string graph_name;           // suite row or file path
  SourceSpec source;
  int block_side = 3;
  std::string ctm_origin;           // file path or "builtin-synthetic"
  std::optional<int> max_rounds;
};

// schema 1. "timing" is the only volatile subtree; everything else is
// bit-identical across runs and worker counts.
nlohmann::json analysis_report_json(const ReportContext& ctx, const Graph& g,
                                    const std::optional<CompositeGraph>& composite,
                                    const EdgeInfoReport& report,
                                    const std::optional<AnalysisResult>& analysis,
                                    uint64_t aut_order, double elapsed_sec);

nlohmann::json deconvolve_report_json(const ReportContext& ctx, const Graph& g,
                                      const std::optional<CompositeGraph>& composite,
                                      const DeconvolveResult& result, double elapsed_sec);

// CSV twin: edge_u,edge_v,part,avg_info,rank (part 0 = connecting edge or no
// composite info). Values carry shortest round-trip formatting: parsing them
// back gives bit-identical doubles.
std::string report_csv(const EdgeInfoReport& report, const std::optional<CompositeGraph>& composite);

std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

} // namespace bdmg

#endif
