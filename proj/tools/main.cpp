// gwplan command line: generate topologies, place gateways, validate and
// render solutions, run benchmark sweeps.
//
// Exit codes: 0 success, 1 usage or input error, 2 validation found the
// inputs infeasible or inconsistent, 3 filesystem error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gwplan/gwplan.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

struct PropagationCliOptions {
  std::string config_path;
  std::optional<double> gamma;
  std::optional<double> sigma;
  std::optional<double> tx_power;
};

// Shared propagation flags for every subcommand that rebuilds the graph.
void add_propagation_flags(CLI::App* cmd, PropagationCliOptions& opts) {
  cmd->add_option("--config", opts.config_path,
                  "key=value config file with propagation settings");
  cmd->add_option("--gamma", opts.gamma, "path loss exponent override");
  cmd->add_option("--sigma", opts.sigma, "shadowing sigma override, dB");
  cmd->add_option("--tx-power", opts.tx_power, "transmit power override, dBm");
}

gwplan::PropagationParams resolve_propagation(const PropagationCliOptions& opts) {
  gwplan::PropagationParams params;
  if (!opts.config_path.empty()) {
    gwplan::Config config = gwplan::Config::parse_file(opts.config_path);
    gwplan::apply_propagation_config(config, params);
    auto leftover = config.unconsumed();
    if (!leftover.empty()) {
      std::string keys;
      for (const auto& key : leftover) keys += (keys.empty() ? "" : ", ") + key;
      throw std::invalid_argument("unknown config keys: " + keys);
    }
  }
  if (opts.gamma) params.gamma = *opts.gamma;
  if (opts.sigma) params.shadowing_sigma_db = *opts.sigma;
  if (opts.tx_power) params.tx_power_dbm = *opts.tx_power;
  params.validate();
  return params;
}

struct GenerateOptions {
  std::size_t nodes = 0;
  double width = 0.0;
  double height = 0.0;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_generate(const GenerateOptions& opts) {
  gwplan::Topology topo = gwplan::generate_topology(opts.nodes, opts.width, opts.height, opts.seed);
  gwplan::save_topology(topo, opts.out_path);
  std::cout << "wrote " << topo.nodes.size() << " nodes to " << opts.out_path << '\n';
  return kExitOk;
}

struct SolveOptions {
  std::string topology_path;
  std::string out_path;
  std::string edges_out_path;
  int k = 1;
  double capacity = 40.0;
  std::uint64_t seed = 1;
  PropagationCliOptions propagation;
};

int run_solve(const SolveOptions& opts) {
  gwplan::PropagationParams params = resolve_propagation(opts.propagation);
  gwplan::Topology topo = gwplan::load_topology(opts.topology_path);
  gwplan::VisibilityGraph graph = gwplan::build_visibility_graph(
      topo, params, gwplan::hash_combine(opts.seed, gwplan::kShadowingSalt));
  if (!opts.edges_out_path.empty()) gwplan::write_edge_list_csv(graph, opts.edges_out_path);
  gwplan::ProblemInstance instance(std::move(graph), opts.capacity, opts.k);

  const auto start = std::chrono::steady_clock::now();
  gwplan::PlacementSolution solution = gwplan::create_connection_graph(instance);
  const auto stop = std::chrono::steady_clock::now();
  const double elapsed = std::chrono::duration<double>(stop - start).count();

  gwplan::ValidationReport report = gwplan::validate_solution(instance, solution);
  if (!report.feasible) {
    std::cerr << "solver produced an infeasible solution:\n"
              << gwplan::validation_report_text(report);
    return kExitInfeasible;
  }
  gwplan::save_solution(solution, opts.out_path);

  auto avg = gwplan::mean_connection_sf(solution, instance.graph);
  std::cout << "gateways=" << solution.gateways.size() << " time_s=" << gwplan::format_double(elapsed, 6)
            << " avg_sf=" << (avg ? gwplan::format_double(*avg, 6) : "-") << '\n';
  return kExitOk;
}

struct ValidateOptions {
  std::string topology_path;
  std::string solution_path;
  int k = 1;
  double capacity = 40.0;
  std::uint64_t seed = 1;
  bool json = false;
  PropagationCliOptions propagation;
};

int run_validate(const ValidateOptions& opts) {
  gwplan::PropagationParams params = resolve_propagation(opts.propagation);
  gwplan::Topology topo = gwplan::load_topology(opts.topology_path);
  gwplan::PlacementSolution solution = gwplan::load_solution(opts.solution_path);
  gwplan::VisibilityGraph graph = gwplan::build_visibility_graph(
      topo, params, gwplan::hash_combine(opts.seed, gwplan::kShadowingSalt));
  gwplan::ProblemInstance instance(std::move(graph), opts.capacity, opts.k);
  gwplan::ValidationReport report = gwplan::validate_solution(instance, solution);
  if (opts.json)
    std::cout << gwplan::validation_report_json(report).dump(2) << '\n';
  else
    std::cout << gwplan::validation_report_text(report);
  return report.feasible ? kExitOk : kExitInfeasible;
}

struct BenchOptions {
  std::string config_path;
  bool reference_grid = false;
  bool print_grid = false;
  std::vector<std::size_t> nodes;
  std::vector<std::string> areas;
  std::vector<int> k_values;
  std::optional<std::size_t> repetitions;
  std::optional<std::uint64_t> base_seed;
  std::optional<double> capacity;
  std::optional<unsigned> threads;
  std::string out_path;
  std::string summary_path;
  bool quiet = false;
};

int run_bench(const BenchOptions& opts) {
  gwplan::ExperimentGrid grid;
  bool have_grid = false;
  if (opts.reference_grid) {
    grid = gwplan::ExperimentGrid::reference();
    have_grid = true;
  }
  if (!opts.config_path.empty()) {
    gwplan::Config config = gwplan::Config::parse_file(opts.config_path);
    gwplan::apply_grid_config(config, grid);
    auto leftover = config.unconsumed();
    if (!leftover.empty()) {
      std::string keys;
      for (const auto& key : leftover) keys += (keys.empty() ? "" : ", ") + key;
      throw std::invalid_argument("unknown config keys: " + keys);
    }
    have_grid = true;
  }
  if (!opts.nodes.empty()) {
    grid.node_counts = opts.nodes;
    have_grid = true;
  }
  if (!opts.areas.empty()) {
    grid.areas.clear();
    for (const auto& item : opts.areas) {
      auto parts = gwplan::split(item, 'x');
      double w = 0.0, h = 0.0;
      if (parts.size() != 2 || !gwplan::parse_double(gwplan::trim(parts[0]), w) ||
          !gwplan::parse_double(gwplan::trim(parts[1]), h))
        throw std::invalid_argument("bad --area '" + item + "', expected WIDTHxHEIGHT in meters");
      grid.areas.emplace_back(w, h);
    }
    have_grid = true;
  }
  if (!opts.k_values.empty()) grid.k_values = opts.k_values;
  if (opts.repetitions) grid.repetitions = *opts.repetitions;
  if (opts.base_seed) grid.base_seed = *opts.base_seed;
  if (opts.capacity) grid.capacity = *opts.capacity;
  if (opts.threads) grid.threads = *opts.threads;
  if (!have_grid)
    throw std::invalid_argument(
        "no grid specified; use --reference-grid, --config, or --nodes/--area flags");
  grid.validate();

  if (opts.print_grid) {
    std::cout << "cells (nodes width height k), " << grid.repetitions << " repetitions each:\n";
    for (const auto& cell : grid.cells())
      std::cout << "  " << cell.nodes << ' ' << gwplan::format_double(cell.width) << ' '
                << gwplan::format_double(cell.height) << ' ' << cell.k << '\n';
    return kExitOk;
  }
  if (opts.out_path.empty())
    throw std::invalid_argument("--out is required unless --print-grid is given");

  gwplan::ProgressFn progress;
  if (!opts.quiet) {
    progress = [](const gwplan::CellSpec& cell, std::size_t rep, const gwplan::RunStats& stats) {
      std::cerr << "n=" << cell.nodes << " area=" << gwplan::format_double(cell.width, 6) << 'x'
                << gwplan::format_double(cell.height, 6) << " k=" << cell.k << " rep=" << rep
                << ": gateways=" << stats.gateway_count
                << " time_s=" << gwplan::format_double(stats.wall_time_s, 4) << '\n';
    };
  }
  std::vector<gwplan::CellResult> results = gwplan::run_experiment(grid, progress);

  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw gwplan::IoError(opts.out_path, "cannot open for writing");
  gwplan::write_runs_csv(results, out);
  out.flush();
  if (!out) throw gwplan::IoError(opts.out_path, "write failed");
  if (!opts.summary_path.empty()) {
    std::ofstream summary(opts.summary_path, std::ios::binary);
    if (!summary) throw gwplan::IoError(opts.summary_path, "cannot open for writing");
    gwplan::write_summary_json(results, summary);
    summary.flush();
    if (!summary) throw gwplan::IoError(opts.summary_path, "write failed");
  }
  std::cout << "wrote " << results.size() << " cells x " << grid.repetitions << " runs to "
            << opts.out_path << '\n';
  return kExitOk;
}

struct PlotOptions {
  std::string topology_path;
  std::string solution_path;
  std::string out_path;
  std::string histogram_path;
  std::uint64_t seed = 1;
  PropagationCliOptions propagation;
};

int run_plot(const PlotOptions& opts) {
  gwplan::PropagationParams params = resolve_propagation(opts.propagation);
  gwplan::Topology topo = gwplan::load_topology(opts.topology_path);
  gwplan::PlacementSolution solution = gwplan::load_solution(opts.solution_path);

  const std::uint32_t n = static_cast<std::uint32_t>(topo.nodes.size());
  for (std::uint32_t gw : solution.gateways)
    if (gw >= n) {
      std::cerr << "solution references gateway " << gw << " but the topology has only " << n
                << " nodes\n";
      return kExitInfeasible;
    }
  for (const auto& [station, gateway] : solution.connections)
    if (station >= n || gateway >= n) {
      std::cerr << "solution references connection (" << station << ", " << gateway
                << ") but the topology has only " << n << " nodes\n";
      return kExitInfeasible;
    }

  // The solution file does not carry SFs, so rebuild the graph with the
  // same seed and parameters the solve used; segment colors come from it.
  gwplan::VisibilityGraph graph = gwplan::build_visibility_graph(
      topo, params, gwplan::hash_combine(opts.seed, gwplan::kShadowingSalt));
  for (const auto& [station, gateway] : solution.connections)
    if (!graph.find_edge(station, gateway)) {
      std::cerr << "connection (" << station << ", " << gateway
                << ") is not an edge of the rebuilt graph; check --seed and propagation flags\n";
      return kExitInfeasible;
    }

  gwplan::write_placement_svg(topo, graph, solution, opts.out_path);
  if (!opts.histogram_path.empty())
    gwplan::write_sf_histogram_svg(gwplan::sf_distribution(solution, graph), opts.histogram_path);
  std::cout << "wrote " << opts.out_path
            << (opts.histogram_path.empty() ? "" : " and " + opts.histogram_path) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LP WAN gateway placement toolkit"};
  app.require_subcommand(1);

  GenerateOptions generate_opts;
  CLI::App* generate = app.add_subcommand("generate", "generate a uniform random topology CSV");
  generate->add_option("--nodes", generate_opts.nodes, "number of stations")->required();
  generate->add_option("--width", generate_opts.width, "area width, m")->required();
  generate->add_option("--height", generate_opts.height, "area height, m")->required();
  generate->add_option("--seed", generate_opts.seed, "random seed (default 1)");
  generate->add_option("--out", generate_opts.out_path, "output CSV path")->required();

  SolveOptions solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "place gateways for a topology");
  solve->add_option("--topology", solve_opts.topology_path, "topology CSV")->required();
  solve->add_option("--out", solve_opts.out_path, "solution JSON path")->required();
  solve->add_option("--edges-out", solve_opts.edges_out_path, "also export the visibility graph CSV");
  solve->add_option("--k", solve_opts.k, "required connections per station (default 1)");
  solve->add_option("--capacity", solve_opts.capacity, "per-gateway cost budget (default 40)");
  solve->add_option("--seed", solve_opts.seed, "shadowing seed (default 1)");
  add_propagation_flags(solve, solve_opts.propagation);

  ValidateOptions validate_opts;
  CLI::App* validate = app.add_subcommand("validate", "check a solution against its instance");
  validate->add_option("--topology", validate_opts.topology_path, "topology CSV")->required();
  validate->add_option("--solution", validate_opts.solution_path, "solution JSON")->required();
  validate->add_option("--k", validate_opts.k, "required connections per station (default 1)");
  validate->add_option("--capacity", validate_opts.capacity, "per-gateway cost budget (default 40)");
  validate->add_option("--seed", validate_opts.seed, "shadowing seed used by the solve (default 1)");
  validate->add_flag("--json", validate_opts.json, "emit the report as JSON");
  add_propagation_flags(validate, validate_opts.propagation);

  BenchOptions bench_opts;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark sweep");
  bench->add_option("--config", bench_opts.config_path, "grid + propagation config file");
  auto* ref_flag = bench->add_flag("--reference-grid", bench_opts.reference_grid,
                                   "use the built-in reference sweep (large)");
  bench->add_flag("--print-grid", bench_opts.print_grid, "print the cells and exit");
  auto* nodes_opt = bench->add_option("--nodes", bench_opts.nodes, "node counts");
  auto* areas_opt = bench->add_option("--area", bench_opts.areas, "areas as WIDTHxHEIGHT, m");
  bench->add_option("--k-values", bench_opts.k_values, "k values");
  bench->add_option("--reps", bench_opts.repetitions, "repetitions per cell");
  bench->add_option("--base-seed", bench_opts.base_seed, "base seed for derived run seeds");
  bench->add_option("--capacity", bench_opts.capacity, "per-gateway cost budget");
  bench->add_option("--threads", bench_opts.threads, "worker threads (0 = hardware)");
  bench->add_option("--out", bench_opts.out_path, "per-run CSV path");
  bench->add_option("--summary", bench_opts.summary_path, "per-cell JSON summary path");
  bench->add_flag("--quiet", bench_opts.quiet, "suppress per-run progress on stderr");
  ref_flag->excludes(nodes_opt);
  ref_flag->excludes(areas_opt);

  PlotOptions plot_opts;
  CLI::App* plot = app.add_subcommand("plot", "render a solution to SVG");
  plot->add_option("--topology", plot_opts.topology_path, "topology CSV")->required();
  plot->add_option("--solution", plot_opts.solution_path, "solution JSON")->required();
  plot->add_option("--out", plot_opts.out_path, "placement map SVG path")->required();
  plot->add_option("--histogram", plot_opts.histogram_path, "SF share histogram SVG path");
  plot->add_option("--seed", plot_opts.seed, "shadowing seed used by the solve (default 1)");
  add_propagation_flags(plot, plot_opts.propagation);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return run_generate(generate_opts);
    if (*solve) return run_solve(solve_opts);
    if (*validate) return run_validate(validate_opts);
    if (*bench) return run_bench(bench_opts);
    if (*plot) return run_plot(plot_opts);
  } catch (const gwplan::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const gwplan::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
