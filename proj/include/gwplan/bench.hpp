#pragma once
// Benchmark harness: sweep a grid of (node count, area, k) cells, solve each
// cell `repetitions` times with derived seeds, and collect per-run and
// per-cell statistics.
//
// Seeds are derived per run from (base_seed, nodes, width, height, k, rep)
// with a stable hash, so every cell and repetition is independent and can be
// reproduced in isolation; re-running a grid yields identical statistics
// except for wall-clock times.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gwplan/config.hpp"
#include "gwplan/errors.hpp"
#include "gwplan/graph.hpp"
#include "gwplan/io.hpp"
#include "gwplan/radio.hpp"
#include "gwplan/solver.hpp"
#include "gwplan/text.hpp"
#include "gwplan/topology.hpp"

namespace gwplan {

struct CellSpec {
  std::size_t nodes = 0;
  double width = 0.0;
  double height = 0.0;
  int k = 1;
};

struct RunStats {
  std::size_t gateway_count = 0;
  double wall_time_s = 0.0;  // solver time only, not graph construction
  // Absent when the solution has no connections (every node a gateway).
  std::optional<double> avg_sf;
  // Fraction of non-gateway nodes per lowest serving SF; absent when every
  // node is a gateway.
  std::optional<std::array<double, kSfClassCount>> sf_histogram;
};

struct CellResult {
  CellSpec cell;
  std::vector<RunStats> runs;
  RunStats mean;  // arithmetic means; optional fields averaged where present
};

struct ExperimentGrid {
  std::vector<std::size_t> node_counts{1000};
  std::vector<std::pair<double, double>> areas{{5000.0, 7500.0}};
  std::vector<int> k_values{1};
  std::size_t repetitions = 30;
  std::uint64_t base_seed = 1;
  double capacity = 40.0;
  PropagationParams propagation;
  unsigned threads = 0;  // 0: hardware concurrency

  // Built-in reference sweep: node counts 1000..20000 over four areas from
  // 37.5 to 600 km^2, k in 1..3, 30 repetitions. The full sweep is hours of
  // compute; trim node_counts for anything interactive.
  static ExperimentGrid reference() {
    ExperimentGrid grid;
    grid.node_counts = {1000, 2500, 5000, 10000, 20000};
    grid.areas = {{5000.0, 7500.0}, {10000.0, 15000.0}, {15000.0, 22500.0}, {20000.0, 30000.0}};
    grid.k_values = {1, 2, 3};
    grid.repetitions = 30;
    return grid;
  }

  void validate() const {
    if (node_counts.empty()) throw std::invalid_argument("grid: node_counts must not be empty");
    if (areas.empty()) throw std::invalid_argument("grid: areas must not be empty");
    if (k_values.empty()) throw std::invalid_argument("grid: k_values must not be empty");
    for (auto [w, h] : areas)
      if (!(w > 0.0) || !(h > 0.0))
        throw std::invalid_argument("grid: area dimensions must be positive");
    for (int k : k_values)
      if (k < 1) throw std::invalid_argument("grid: k values must be at least 1");
    if (repetitions < 1) throw std::invalid_argument("grid: repetitions must be at least 1");
    if (!(capacity > 0.0)) throw std::invalid_argument("grid: capacity must be positive");
    propagation.validate();
  }

  std::vector<CellSpec> cells() const {
    std::vector<CellSpec> out;
    for (std::size_t n : node_counts)
      for (auto [w, h] : areas)
        for (int k : k_values) out.push_back({n, w, h, k});
    return out;
  }
};

inline std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t nodes, double width,
                                     double height, int k, std::size_t rep) {
  std::uint64_t s = hash_combine(base_seed, static_cast<std::uint64_t>(nodes));
  s = hash_combine(s, width);
  s = hash_combine(s, height);
  s = hash_combine(s, static_cast<std::uint64_t>(static_cast<std::uint32_t>(k)));
  return hash_combine(s, static_cast<std::uint64_t>(rep));
}

// Distinct sub-seeds for the two random stages of one run.
inline constexpr std::uint64_t kTopologySalt = 1;
inline constexpr std::uint64_t kShadowingSalt = 2;

// Mean spreading factor over the solution's connections; absent when there
// are none.
inline std::optional<double> mean_connection_sf(const PlacementSolution& solution,
                                                const VisibilityGraph& graph) {
  if (solution.connections.empty()) return std::nullopt;
  std::uint64_t total = 0;
  for (const auto& [station, gateway] : solution.connections) {
    auto edge = graph.find_edge(station, gateway);
    if (!edge)
      throw std::invalid_argument("mean_connection_sf: connection (" + std::to_string(station) +
                                  ", " + std::to_string(gateway) + ") is not a graph edge");
    total += edge->sf;
  }
  return static_cast<double>(total) / static_cast<double>(solution.connections.size());
}

// Histogram over non-gateway nodes of the lowest SF among each node's
// serving connections. Fractions sum to 1 for feasible solutions. Absent
// when every node is a gateway.
inline std::optional<std::array<double, kSfClassCount>> sf_distribution(
    const PlacementSolution& solution, const VisibilityGraph& graph) {
  const std::uint32_t n = graph.vertex_count();
  std::vector<char> is_gateway(n, 0);
  for (std::uint32_t gw : solution.gateways) {
    if (gw >= n) throw std::invalid_argument("sf_distribution: gateway id out of range");
    is_gateway[gw] = 1;
  }
  std::vector<std::uint8_t> min_sf(n, 0xff);
  for (const auto& [station, gateway] : solution.connections) {
    if (station >= n || gateway >= n)
      throw std::invalid_argument("sf_distribution: connection endpoint out of range");
    auto edge = graph.find_edge(station, gateway);
    if (!edge)
      throw std::invalid_argument("sf_distribution: connection (" + std::to_string(station) +
                                  ", " + std::to_string(gateway) + ") is not a graph edge");
    const std::uint32_t st = is_gateway[station] ? gateway : station;
    min_sf[st] = std::min(min_sf[st], edge->sf);
  }
  std::size_t station_count = 0;
  std::array<std::size_t, kSfClassCount> counts{};
  for (std::uint32_t v = 0; v < n; ++v) {
    if (is_gateway[v]) continue;
    ++station_count;
    if (min_sf[v] != 0xff) ++counts[min_sf[v] - SpreadingFactor::kMin];
  }
  if (station_count == 0) return std::nullopt;
  std::array<double, kSfClassCount> fractions{};
  for (int cls = 0; cls < kSfClassCount; ++cls)
    fractions[cls] = static_cast<double>(counts[cls]) / static_cast<double>(station_count);
  return fractions;
}

namespace detail {

inline RunStats run_one(const ExperimentGrid& grid, const CellSpec& cell, std::size_t rep) {
  const std::uint64_t run_seed =
      derive_run_seed(grid.base_seed, cell.nodes, cell.width, cell.height, cell.k, rep);
  Topology topo = generate_topology(cell.nodes, cell.width, cell.height,
                                    hash_combine(run_seed, kTopologySalt));
  VisibilityGraph graph =
      build_visibility_graph(topo, grid.propagation, hash_combine(run_seed, kShadowingSalt), 1);
  ProblemInstance instance(std::move(graph), grid.capacity, cell.k);

  const auto start = std::chrono::steady_clock::now();
  PlacementSolution solution = create_connection_graph(instance);
  const auto stop = std::chrono::steady_clock::now();

  ValidationReport report = validate_solution(instance, solution);
  if (!report.feasible)
    throw std::runtime_error("benchmark run produced an infeasible solution (nodes=" +
                             std::to_string(cell.nodes) + " k=" + std::to_string(cell.k) +
                             " rep=" + std::to_string(rep) + " seed=" + std::to_string(run_seed) +
                             ")\n" + validation_report_text(report));

  RunStats stats;
  stats.gateway_count = solution.gateways.size();
  stats.wall_time_s = std::chrono::duration<double>(stop - start).count();
  stats.avg_sf = mean_connection_sf(solution, instance.graph);
  stats.sf_histogram = sf_distribution(solution, instance.graph);
  return stats;
}

inline RunStats mean_of(const std::vector<RunStats>& runs) {
  RunStats mean;
  double time = 0.0;
  double sf_sum = 0.0;
  std::size_t sf_count = 0;
  std::array<double, kSfClassCount> hist{};
  std::size_t hist_count = 0;
  for (const RunStats& r : runs) {
    time += r.wall_time_s;
    if (r.avg_sf) {
      sf_sum += *r.avg_sf;
      ++sf_count;
    }
    if (r.sf_histogram) {
      for (int c = 0; c < kSfClassCount; ++c) hist[c] += (*r.sf_histogram)[c];
      ++hist_count;
    }
  }
  const auto count = static_cast<double>(runs.size());
  mean.gateway_count = 0;  // meaningless for a mean; see mean_gateways below
  mean.wall_time_s = time / count;
  if (sf_count > 0) mean.avg_sf = sf_sum / static_cast<double>(sf_count);
  if (hist_count > 0) {
    for (int c = 0; c < kSfClassCount; ++c) hist[c] /= static_cast<double>(hist_count);
    mean.sf_histogram = hist;
  }
  return mean;
}

}  // namespace detail

// Mean gateway count of a cell (RunStats::gateway_count is integral, so the
// mean lives outside the struct).
inline double mean_gateways(const CellResult& cell) {
  double total = 0.0;
  for (const RunStats& r : cell.runs) total += static_cast<double>(r.gateway_count);
  return total / static_cast<double>(cell.runs.size());
}

using ProgressFn = std::function<void(const CellSpec&, std::size_t rep, const RunStats&)>;

inline std::vector<CellResult> run_experiment(const ExperimentGrid& grid,
                                              const ProgressFn& progress = nullptr) {
  grid.validate();
  const std::vector<CellSpec> cells = grid.cells();
  const std::size_t reps = grid.repetitions;
  const std::size_t total = cells.size() * reps;

  std::vector<std::vector<RunStats>> results(cells.size(), std::vector<RunStats>(reps));
  unsigned want = grid.threads != 0 ? grid.threads : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  if (want > total) want = static_cast<unsigned>(total);

  std::atomic<std::size_t> next{0};
  std::mutex mu;  // guards first_error and progress callbacks
  std::exception_ptr first_error;
  auto worker = [&]() {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t ci = task / reps;
      const std::size_t rep = task % reps;
      try {
        RunStats stats = detail::run_one(grid, cells[ci], rep);
        results[ci][rep] = stats;
        if (progress) {
          std::lock_guard<std::mutex> lock(mu);
          progress(cells[ci], rep, stats);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (want == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < want; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<CellResult> out;
  out.reserve(cells.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    CellResult cell;
    cell.cell = cells[ci];
    cell.runs = std::move(results[ci]);
    cell.mean = detail::mean_of(cell.runs);
    out.push_back(std::move(cell));
  }
  return out;
}

// Per-run CSV: one row per repetition, empty cells where a statistic is
// absent.
inline void write_runs_csv(const std::vector<CellResult>& results, std::ostream& out) {
  out << "n,width,height,k,rep,gateways,time_s,avg_sf,sf7,sf8,sf9,sf10,sf11,sf12\n";
  for (const CellResult& cell : results) {
    for (std::size_t rep = 0; rep < cell.runs.size(); ++rep) {
      const RunStats& r = cell.runs[rep];
      out << cell.cell.nodes << ',' << format_double(cell.cell.width) << ','
          << format_double(cell.cell.height) << ',' << cell.cell.k << ',' << rep << ','
          << r.gateway_count << ',' << format_double(r.wall_time_s) << ',';
      if (r.avg_sf) out << format_double(*r.avg_sf);
      for (int c = 0; c < kSfClassCount; ++c) {
        out << ',';
        if (r.sf_histogram) out << format_double((*r.sf_histogram)[c]);
      }
      out << '\n';
    }
  }
}

inline nlohmann::ordered_json summary_to_json(const std::vector<CellResult>& results) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CellResult& cell : results) {
    nlohmann::ordered_json j;
    j["nodes"] = cell.cell.nodes;
    j["width"] = cell.cell.width;
    j["height"] = cell.cell.height;
    j["k"] = cell.cell.k;
    j["repetitions"] = cell.runs.size();
    j["mean_gateways"] = mean_gateways(cell);
    j["mean_time_s"] = cell.mean.wall_time_s;
    if (cell.mean.avg_sf)
      j["mean_avg_sf"] = *cell.mean.avg_sf;
    else
      j["mean_avg_sf"] = nullptr;
    if (cell.mean.sf_histogram) {
      nlohmann::ordered_json hist;
      for (int c = 0; c < kSfClassCount; ++c)
        hist["sf" + std::to_string(SpreadingFactor::kMin + c)] = (*cell.mean.sf_histogram)[c];
      j["mean_sf_histogram"] = std::move(hist);
    } else {
      j["mean_sf_histogram"] = nullptr;
    }
    list.push_back(std::move(j));
  }
  return list;
}

inline void write_summary_json(const std::vector<CellResult>& results, std::ostream& out) {
  out << summary_to_json(results).dump(2) << '\n';
}

// Grid keys: node_counts, areas (WxH pairs), k_values, repetitions,
// base_seed, capacity, threads, plus the propagation keys.
inline void apply_grid_config(Config& config, ExperimentGrid& grid) {
  std::vector<std::string> items;
  if (config.get_list("node_counts", items)) {
    grid.node_counts.clear();
    for (const auto& item : items) {
      std::uint64_t n = 0;
      if (!parse_integer(item, n))
        throw ParseError(config.line_of("node_counts"), "bad node count '" + item + "'");
      grid.node_counts.push_back(static_cast<std::size_t>(n));
    }
  }
  if (config.get_list("areas", items)) {
    grid.areas.clear();
    for (const auto& item : items) {
      auto parts = split(item, 'x');
      double w = 0.0, h = 0.0;
      if (parts.size() != 2 || !parse_double(trim(parts[0]), w) || !parse_double(trim(parts[1]), h))
        throw ParseError(config.line_of("areas"),
                         "bad area '" + item + "', expected WIDTHxHEIGHT in meters");
      grid.areas.emplace_back(w, h);
    }
  }
  if (config.get_list("k_values", items)) {
    grid.k_values.clear();
    for (const auto& item : items) {
      int k = 0;
      if (!parse_integer(item, k))
        throw ParseError(config.line_of("k_values"), "bad k value '" + item + "'");
      grid.k_values.push_back(k);
    }
  }
  std::uint64_t u64 = 0;
  if (config.get_u64("repetitions", u64)) grid.repetitions = static_cast<std::size_t>(u64);
  config.get_u64("base_seed", grid.base_seed);
  config.get_double("capacity", grid.capacity);
  if (config.get_u64("threads", u64)) grid.threads = static_cast<unsigned>(u64);
  apply_propagation_config(config, grid.propagation);
  grid.validate();
}

}  // namespace gwplan
