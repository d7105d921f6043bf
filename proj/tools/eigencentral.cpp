// eigencentral: sparse eigenvector-centrality engine.
//
// Subcommands:
//   compute   rank a graph (baseline, componentwise, or auto-blocks)
//   compare   run componentwise and baseline at one tolerance, diff them
//   sweep     runtime/iterations across a tolerance list, both algorithms
//   generate  deterministic synthetic benchmark graphs

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evc/csv.hpp"
#include "evc/driver.hpp"
#include "evc/generate.hpp"
#include "evc/kernels.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
  std::string input;
  std::string algo = "componentwise";
  double tol = 1e-9;
  int max_iter = 10000;
  bool no_rowsum_skip = false;
  bool no_half_discard = false;
  bool no_batch_singles = false;
  bool parallel_levels = false;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::string tols = "1e-3,1e-6,1e-9";
  int repeats = 1;
  bool dump_decomposition = false;
  std::string kernels = "auto";
};

evc::SolveOptions make_options(const RunConfig& cfg) {
  evc::SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.row_sum_skip = !cfg.no_rowsum_skip;
  opts.half_discard = !cfg.no_half_discard;
  opts.batch_singles = !cfg.no_batch_singles;
  opts.parallel_levels = cfg.parallel_levels;
  return opts;
}

evc::SparseGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open input: " + path);
  return evc::parse_edge_list(in);
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write: " + path);
  return out;
}

std::pair<std::vector<double>, evc::RunReport> run_algo(
    const std::string& algo, const evc::SparseGraph& g,
    const evc::SolveOptions& opts) {
  if (algo == "baseline") return evc::run_baseline(g, opts);
  if (algo == "componentwise") return evc::run_componentwise(g, opts);
  if (algo == "auto-blocks") return evc::run_auto_blocks(g, opts);
  throw CLI::ValidationError("--algo", "unknown algorithm: " + algo);
}

int cmd_compute(const RunConfig& cfg) {
  evc::SparseGraph g = load_graph(cfg.input);
  auto [scores, report] = run_algo(cfg.algo, g, make_options(cfg));

  auto rank_out = open_output(cfg.out_dir, "rank.csv");
  evc::write_rank_csv(rank_out, g, scores);
  if (cfg.algo != "baseline") {
    auto report_out = open_output(cfg.out_dir, "report.csv");
    evc::write_report_csv(report_out, report);
  }
  if (cfg.dump_decomposition) {
    auto decomp_out = open_output(cfg.out_dir, "decomposition.csv");
    evc::write_decomposition_csv(decomp_out, evc::find_components(g));
  }
  if (!report.all_converged)
    std::cerr << "warning: some units hit the iteration cap before "
                 "converging (see report.csv)\n";
  std::printf("n=%u m=%llu lambda=%.12g iterations=%lld solve=%.3fs total=%.3fs\n",
              g.vertex_count(),
              static_cast<unsigned long long>(g.edge_count()),
              report.lambda_max,
              static_cast<long long>(report.total_iterations),
              report.solve_seconds, report.total_seconds);
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  evc::SparseGraph g = load_graph(cfg.input);
  evc::SolveOptions opts = make_options(cfg);
  auto [cw_scores, cw_report] = evc::run_componentwise(g, opts);
  auto [base_scores, base_report] = evc::run_baseline(g, opts);

  const double diff = evc::kernels::active().max_abs_diff(
      cw_scores.data(), base_scores.data(), cw_scores.size());
  const int base_iters = base_report.records.front().iterations;

  auto out = open_output(cfg.out_dir, "compare.csv");
  out << "component,level,size,iterations,lambda,status,baseline_iterations,"
         "max_abs_diff\n";
  char buf[64];
  for (const evc::UnitRecord& r : cw_report.records) {
    std::snprintf(buf, sizeof buf, "%.12g", r.lambda);
    out << r.component << (r.is_group ? "g" : "") << ',' << r.level << ','
        << r.size << ',' << r.iterations << ',' << buf << ','
        << evc::to_string(r.status) << ',' << base_iters << ',';
    std::snprintf(buf, sizeof buf, "%.12g", diff);
    out << buf << '\n';
  }
  std::printf("componentwise_total_iterations=%lld baseline_iterations=%d "
              "max_abs_diff=%.3g\n",
              static_cast<long long>(cw_report.total_iterations), base_iters,
              diff);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  std::vector<double> tols;
  std::stringstream ss(cfg.tols);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) tols.push_back(std::stod(item));
  }
  if (tols.size() < 2)
    throw CLI::ValidationError("--tols", "need at least two tolerances");

  evc::SparseGraph g = load_graph(cfg.input);
  auto out = open_output(cfg.out_dir, "sweep.csv");
  out << "tol,algorithm,solve_seconds,total_seconds,total_iterations\n";
  char buf[64];
  for (double tol : tols) {
    for (const char* algo : {"componentwise", "baseline"}) {
      RunConfig local = cfg;
      local.tol = tol;
      evc::SolveOptions opts = make_options(local);
      evc::RunReport best;
      for (int rep = 0; rep < std::max(1, cfg.repeats); ++rep) {
        auto [scores, report] = run_algo(algo, g, opts);
        (void)scores;
        if (rep == 0 || report.solve_seconds < best.solve_seconds)
          best = report;
      }
      std::snprintf(buf, sizeof buf, "%.3g", tol);
      out << buf << ',' << algo << ',';
      std::snprintf(buf, sizeof buf, "%.6f", best.solve_seconds);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.6f", best.total_seconds);
      out << buf << ',' << best.total_iterations << '\n';
    }
  }
  return kExitOk;
}

struct GenerateConfig {
  std::string kind;
  std::string output = "graph.txt";
  std::uint64_t seed = 1;
  std::uint32_t components = 10;
  std::uint32_t comp_size = 5;
  double link_prob = 0.3;
  std::uint32_t n = 10000;
  double giant_frac = 0.5;
  std::uint32_t blocks = 2;
  std::uint32_t block_components = 3;
};

int cmd_generate(const GenerateConfig& cfg) {
  evc::SparseGraph g;
  if (cfg.kind == "dag-of-sccs") {
    g = evc::generate_dag_of_sccs(
        {cfg.components, cfg.comp_size, cfg.link_prob, cfg.seed});
  } else if (cfg.kind == "giant-component") {
    g = evc::generate_giant_component({cfg.n, cfg.giant_frac, cfg.seed});
  } else if (cfg.kind == "isolated-blocks") {
    g = evc::generate_isolated_blocks(
        {cfg.blocks, cfg.block_components, cfg.comp_size, cfg.seed});
  } else {
    throw CLI::ValidationError("kind", "unknown generator: " + cfg.kind);
  }
  std::ofstream out(cfg.output);
  if (!out) throw std::ios_base::failure("cannot write: " + cfg.output);
  out << "# generated: " << cfg.kind << " seed=" << cfg.seed << "\n";
  evc::write_edge_list(out, g);
  std::printf("wrote %s: n=%u m=%llu\n", cfg.output.c_str(), g.vertex_count(),
              static_cast<unsigned long long>(g.edge_count()));
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_input) {
  auto* in = cmd->add_option("--input", cfg.input, "edge-list input file");
  if (needs_input) in->required();
  cmd->add_option("--tol", cfg.tol, "convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", cfg.max_iter, "iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-rowsum-skip", cfg.no_rowsum_skip,
                "disable the row-sum bound skip");
  cmd->add_flag("--no-half-discard", cfg.no_half_discard,
                "disable the half-maximum early discard");
  cmd->add_flag("--no-batch-singles", cfg.no_batch_singles,
                "solve 1-vertex components individually");
  cmd->add_flag("--parallel-levels", cfg.parallel_levels,
                "solve same-level components concurrently");
  cmd->add_option("--out-dir", cfg.out_dir, "output directory");
  cmd->add_option("--seed", cfg.seed, "generator seed");
  cmd->add_option("--kernels", cfg.kernels,
                  "kernel variant: auto, scalar, avx2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"componentwise eigenvector centrality"};
  app.require_subcommand(1);

  RunConfig cfg;
  GenerateConfig gen;

  CLI::App* compute = app.add_subcommand("compute", "rank a graph");
  add_common(compute, cfg, true);
  compute->add_option("--algo", cfg.algo, "baseline|componentwise|auto-blocks")
      ->check(CLI::IsMember({"baseline", "componentwise", "auto-blocks"}));
  compute->add_flag("--dump-decomposition", cfg.dump_decomposition,
                    "also write decomposition.csv");

  CLI::App* compare =
      app.add_subcommand("compare", "componentwise vs baseline");
  add_common(compare, cfg, true);

  CLI::App* sweep = app.add_subcommand("sweep", "tolerance sweep");
  add_common(sweep, cfg, true);
  sweep->add_option("--tols", cfg.tols, "comma-separated tolerance list");
  sweep->add_option("--repeats", cfg.repeats,
                    "timing repeats per cell (minimum kept)");

  CLI::App* generate = app.add_subcommand("generate", "synthetic graphs");
  generate
      ->add_option("kind", gen.kind,
                   "dag-of-sccs|giant-component|isolated-blocks")
      ->required();
  generate->add_option("--output", gen.output, "output edge-list path");
  generate->add_option("--seed", gen.seed, "rng seed");
  generate->add_option("--components", gen.components, "component count");
  generate->add_option("--comp-size", gen.comp_size, "vertices per component");
  generate->add_option("--link-prob", gen.link_prob, "cross-link probability");
  generate->add_option("--n", gen.n, "total vertex count");
  generate->add_option("--giant-frac", gen.giant_frac, "giant fraction");
  generate->add_option("--blocks", gen.blocks, "disconnected block count");
  generate->add_option("--block-components", gen.block_components,
                       "components per block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (!evc::kernels::force(cfg.kernels)) {
    std::cerr << "error: kernel variant '" << cfg.kernels
              << "' not available on this machine\n";
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(cfg);
    if (compare->parsed()) return cmd_compare(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (generate->parsed()) return cmd_generate(gen);
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const evc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
