// bdmg: approximate algorithmic complexity of graphs via 2D block
// decomposition and identify connecting edges by permutation-averaged edge
// perturbation.
//
//   bdmg suite --out DIR                     write the 30 composite graphs
//   bdmg analyze --suite-row NAME ...        per-edge info report + analysis
//   bdmg deconvolve --graph FILE ...         recursive edge removal
//   bdmg ctm synth|check ...                 CTM table utilities
//
// Exit codes: 0 ok, 1 usage, 2 data, 3 resource guard.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "bdmg/analysis.hpp"
#include "bdmg/errors.hpp"
#include "bdmg/report.hpp"
#include "bdmg/subsets.hpp"
#include "bdmg/suite.hpp"

namespace {

using namespace bdmg;

int exit_code_for(const Error& e) {
  switch (e.code) {
    case Errc::invalid_spec:
      return 1;
    case Errc::too_large:
      return 3;
    default:
      return 2;
  }
}

struct CommonArgs {
  std::string graph_file;
  std::string suite_row;
  std::string perm = "aut";
  uint64_t sample_size = 10000;
  uint64_t seed = 42;
  int block_size = 3;
  std::string ctm_path;
  int workers = 0;
  std::string out_path;
  std::string checkpoint;
  std::string rep_cache;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--graph", a.graph_file, "graph file (edge-list format)");
  cmd->add_option("--suite-row", a.suite_row, "suite row name, e.g. complete5-cycle4");
  cmd->add_option("--perm", a.perm, "permutation set: sym | aut | sample")
      ->check(CLI::IsMember({"sym", "aut", "sample"}));
  cmd->add_option("--sample-size", a.sample_size, "permutations to draw for --perm sample");
  cmd->add_option("--seed", a.seed, "seed for --perm sample");
  cmd->add_option("--block-size", a.block_size, "block side l (3 or 4)")
      ->check(CLI::IsMember({3, 4}));
  cmd->add_option("--ctm", a.ctm_path, "CTM table CSV; built-in synthetic table when omitted");
  cmd->add_option("--workers", a.workers, "worker threads (default: all cores)");
  cmd->add_option("--out", a.out_path, "output report path (.json; a .csv twin is written too)");
  cmd->add_option("--checkpoint", a.checkpoint, "resumable progress file for long runs");
  cmd->add_option("--rep-cache", a.rep_cache,
                  "representative cache file (--perm aut): reused if present, else written");
}

struct LoadedInput {
  Graph graph;
  std::optional<CompositeGraph> composite;
  std::string name;
};

LoadedInput load_input(const CommonArgs& a) {
  if (a.graph_file.empty() == a.suite_row.empty())
    fail(Errc::invalid_spec, "exactly one of --graph / --suite-row is required");
  LoadedInput in;
  if (!a.suite_row.empty()) {
    const SuiteRow* row = find_suite_row(a.suite_row);
    if (!row) fail(Errc::invalid_spec, "unknown suite row: " + a.suite_row);
    in.composite = build_suite_row(*row);
    in.graph = in.composite->graph;
    in.name = a.suite_row;
  } else {
    GraphFile f = load_graph_file(a.graph_file);
    in.graph = f.graph;
    if (f.is_composite) in.composite = f.composite;
    in.name = a.graph_file;
  }
  return in;
}

CtmTable load_table(const CommonArgs& a) {
  if (a.ctm_path.empty()) return make_synthetic_table(a.block_size);
  return load_ctm_table(a.ctm_path, a.block_size);
}

SourceSpec source_spec(const CommonArgs& a) {
  SourceSpec s;
  s.kind = a.perm == "sym"   ? PermKind::symmetric_group
           : a.perm == "aut" ? PermKind::automorphic_subsets
                             : PermKind::random_sample;
  s.sample_size = a.sample_size;
  s.seed = a.seed;
  return s;
}

ReportContext make_context(const CommonArgs& a, const LoadedInput& in) {
  ReportContext ctx;
  ctx.graph_name = in.name;
  ctx.source = source_spec(a);
  ctx.block_side = a.block_size;
  ctx.ctm_origin = a.ctm_path.empty() ? "builtin-synthetic" : a.ctm_path;
  return ctx;
}

void emit_report(const CommonArgs& a, const nlohmann::json& j, const std::string& csv) {
  const std::string text = j.dump(2) + "\n";
  if (a.out_path.empty()) {
    std::cout << text;
    return;
  }
  write_text_file(a.out_path, text);
  std::string csv_path = a.out_path;
  const auto dot = csv_path.rfind(".json");
  if (dot != std::string::npos && dot == csv_path.size() - 5)
    csv_path.resize(dot);
  csv_path += ".csv";
  write_text_file(csv_path, csv);
  std::cerr << "wrote " << a.out_path << " and " << csv_path << "\n";
}

PermSource build_source(const CommonArgs& a, const SourceSpec& spec, const Graph& g) {
  PermSource src = make_source(spec, g);
  if (!a.rep_cache.empty() && spec.kind == PermKind::automorphic_subsets) {
    if (std::filesystem::exists(a.rep_cache)) {
      src.materialized = load_rep_cache(a.rep_cache, g);
      std::cerr << "loaded " << src.materialized.size() << " representatives from " << a.rep_cache
                << "\n";
    } else {
      save_rep_cache(a.rep_cache, g, src.aut);
      src.materialized = load_rep_cache(a.rep_cache, g);
      std::cerr << "wrote representative cache " << a.rep_cache << "\n";
    }
  }
  return src;
}

int cmd_suite(const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  for (const SuiteRow& row : suite_rows()) {
    const CompositeGraph c = build_suite_row(row);
    std::ofstream out(outdir + "/" + row.name + ".graph", std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write into " + outdir);
    out << "# " << row.name << "\n";
    write_composite(out, c);
    if (!out) fail(Errc::io_error, "write failed in " + outdir);
  }
  std::cerr << "wrote " << suite_rows().size() << " composite graphs to " << outdir << "\n";
  return 0;
}

int cmd_analyze(const CommonArgs& a) {
  const LoadedInput in = load_input(a);
  const CtmTable table = load_table(a);
  const SourceSpec spec = source_spec(a);
  const PermSource src = build_source(a, spec, in.graph);
  RunOptions options;
  options.workers = a.workers;
  options.checkpoint_path = a.checkpoint;

  const auto t0 = std::chrono::steady_clock::now();
  const EdgeInfoReport report = average_info(in.graph, src, table, options);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::optional<AnalysisResult> analysis;
  if (in.composite && report.entries.size() >= 2)
    analysis = distance_test(report, *in.composite);
  const uint64_t aut_order = src.kind == PermKind::automorphic_subsets ? src.aut.size() : 0;
  const nlohmann::json j =
      analysis_report_json(make_context(a, in), in.graph, in.composite, report, analysis,
                           aut_order, elapsed);
  emit_report(a, j, report_csv(report, in.composite));
  return 0;
}

int cmd_deconvolve(const CommonArgs& a, int max_rounds) {
  const LoadedInput in = load_input(a);
  const CtmTable table = load_table(a);
  const SourceSpec spec = source_spec(a);
  RunOptions options;
  options.workers = a.workers;
  options.checkpoint_path = a.checkpoint;

  const auto t0 = std::chrono::steady_clock::now();
  const DeconvolveResult result = deconvolve(in.graph, spec, table, max_rounds, options);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ReportContext ctx = make_context(a, in);
  ctx.max_rounds = max_rounds;
  const nlohmann::json j = deconvolve_report_json(ctx, in.graph, in.composite, result, elapsed);
  std::string csv = result.rounds.empty()
                        ? std::string("edge_u,edge_v,part,avg_info,rank\n")
                        : report_csv(result.rounds.back().report, in.composite);
  emit_report(a, j, csv);
  return 0;
}

int cmd_ctm_synth(int side, const std::string& out_path) {
  const CtmTable t = make_synthetic_table(side);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + out_path);
  save_ctm_table(out, t);
  std::cerr << "wrote " << t.block_count() << "-entry side-" << side << " table to " << out_path
            << "\n";
  return 0;
}

int cmd_ctm_check(int side, const std::string& path) {
  const CtmTable t = load_ctm_table(path, side);
  std::cout << "ok: " << t.block_count() << " blocks, side " << t.side << ", source "
            << t.source_id << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph complexity via 2D block decomposition and edge perturbation"};
  app.require_subcommand(1);

  std::string suite_out = "suite";
  CLI::App* suite = app.add_subcommand("suite", "write the 30-composite experiment suite");
  suite->add_option("--out", suite_out, "output directory")->required();

  CommonArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "average per-edge information contribution");
  add_common(analyze, analyze_args);

  CommonArgs dec_args;
  int max_rounds = 8;
  CLI::App* dec = app.add_subcommand("deconvolve", "recursively remove qualifying edges");
  add_common(dec, dec_args);
  dec->add_option("--max-rounds", max_rounds, "maximum removal rounds");

  CLI::App* ctm = app.add_subcommand("ctm", "CTM table utilities");
  ctm->require_subcommand(1);
  int synth_side = 3, check_side = 3;
  std::string synth_out, check_path;
  CLI::App* synth = ctm->add_subcommand("synth", "write the built-in synthetic table as CSV");
  synth->add_option("--block-size", synth_side, "block side")->check(CLI::IsMember({2, 3, 4}));
  synth->add_option("--out", synth_out, "output CSV path")->required();
  CLI::App* check = ctm->add_subcommand("check", "validate a CTM table CSV");
  check->add_option("--block-size", check_side, "block side")->check(CLI::IsMember({2, 3, 4}));
  check->add_option("path", check_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
    if (*suite) return cmd_suite(suite_out);
    if (*analyze) return cmd_analyze(analyze_args);
    if (*dec) return cmd_deconvolve(dec_args, max_rounds);
    if (*synth) return cmd_ctm_synth(synth_side, synth_out);
    if (*check) return cmd_ctm_check(check_side, check_path);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
