#pragma once
// Greedy gateway placement: a capacitated k-dominating set plus the explicit
// station-to-gateway connection scheme.
//
// Each round scores every non-gateway vertex w by the service set S it could
// take on if promoted: walk w's unserved non-gateway neighbors from cheapest
// spreading factor up, admitting a station only while the accumulated load
// stays within capacity, and let value(w) = 1 + |S| (the +1 is w itself,
// since joining the gateway set covers w's own requirement). The best vertex
// wins, ties by lowest id. Rounds repeat until no vertex outside the gateway
// set is short of its k serving connections.
//
// Two consequences of "gateway membership counts as served" are worth
// spelling out. First, a gateway never holds serving links of its own, so
// when a served station is promoted its existing links are dropped (they
// would otherwise join two gateways, which the validator rejects). Second, a
// vertex that is already fully served still scores at least 1 and can win a
// round; that wastes no feasibility but means the unserved count does not
// always shrink. Termination is still guaranteed because the winner is
// always outside the gateway set, so |D| grows every round and the loop runs
// at most n times.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwplan/graph.hpp"
#include "gwplan/sf.hpp"
#include "gwplan/text.hpp"

namespace gwplan {

struct GatewayChoice {
  std::uint32_t gateway = 0;
  // Stations the new gateway takes on, in admission order (ascending cost,
  // then ascending id within a cost class).
  std::vector<std::uint32_t> served;
  std::uint64_t value = 0;  // 1 + served.size()
};

namespace detail {

// Argmax of the greedy value over all non-gateway vertices, ties by lowest
// id. Works on cost-class counts rather than materialized sets, which is
// equivalent to cheapest-first admission because stations of equal SF are
// interchangeable in cost. O(sum of degrees).
inline std::pair<std::uint32_t, std::uint64_t> best_candidate(
    const VisibilityGraph& g, std::span<const std::uint32_t> h_degree,
    std::span<const char> is_gateway, int k, double capacity) {
  const std::uint32_t n = g.vertex_count();
  const auto uk = static_cast<std::uint32_t>(k);
  std::uint32_t best = n;
  std::uint64_t best_value = 0;
  for (std::uint32_t w = 0; w < n; ++w) {
    if (is_gateway[w]) continue;
    std::uint32_t counts[kSfClassCount] = {};
    for (const Edge& e : g.neighbors(w))
      if (!is_gateway[e.to] && h_degree[e.to] < uk) ++counts[e.sf - SpreadingFactor::kMin];
    std::int64_t load = 0;
    std::uint64_t served = 0;
    for (int cls = 0; cls < kSfClassCount; ++cls) {
      const int cost = 1 << cls;
      std::uint32_t left = counts[cls];
      while (left > 0 && capacity_admits(load, cost, capacity)) {
        load += cost;
        --left;
        ++served;
      }
      if (left > 0) break;  // nothing more expensive will fit either
    }
    const std::uint64_t value = 1 + served;
    if (best == n || value > best_value) {
      best = w;
      best_value = value;
    }
  }
  if (best == n) throw std::invalid_argument("new_gateway: no candidate vertex outside the gateway set");
  return {best, best_value};
}

// Materialize the service set for a chosen gateway: cheapest cost class
// first, ascending id within a class (adjacency is id-sorted already),
// admitting while the load fits.
inline std::vector<std::uint32_t> served_set(const VisibilityGraph& g,
                                             std::span<const std::uint32_t> h_degree,
                                             std::span<const char> is_gateway, int k,
                                             double capacity, std::uint32_t w) {
  const auto uk = static_cast<std::uint32_t>(k);
  std::vector<std::uint32_t> by_class[kSfClassCount];
  for (const Edge& e : g.neighbors(w))
    if (!is_gateway[e.to] && h_degree[e.to] < uk)
      by_class[e.sf - SpreadingFactor::kMin].push_back(e.to);
  std::vector<std::uint32_t> served;
  std::int64_t load = 0;
  for (int cls = 0; cls < kSfClassCount; ++cls) {
    const int cost = 1 << cls;
    for (std::uint32_t v : by_class[cls]) {
      if (!capacity_admits(load, cost, capacity)) return served;
      load += cost;
      served.push_back(v);
    }
  }
  return served;
}

}  // namespace detail

// One greedy round against an explicit intermediate state: the connection
// list built so far and the gateways already chosen. Intended for stepping
// through the construction; the full solver keeps incremental state instead
// of rebuilding it per round.
inline GatewayChoice new_gateway(const VisibilityGraph& g,
                                 std::span<const std::pair<std::uint32_t, std::uint32_t>> connections,
                                 std::span<const std::uint32_t> gateways, int k, double capacity) {
  if (g.vertex_count() == 0) throw std::invalid_argument("new_gateway: graph has no vertices");
  if (k < 1) throw std::invalid_argument("new_gateway: k must be at least 1");
  if (!(capacity > 0.0)) throw std::invalid_argument("new_gateway: capacity must be positive");
  const std::uint32_t n = g.vertex_count();
  std::vector<char> is_gateway(n, 0);
  for (std::uint32_t gw : gateways) {
    if (gw >= n) throw std::invalid_argument("new_gateway: gateway id out of range");
    is_gateway[gw] = 1;
  }
  std::vector<std::uint32_t> degree(n, 0);
  for (const auto& [a, b] : connections) {
    if (a >= n || b >= n) throw std::invalid_argument("new_gateway: connection endpoint out of range");
    // Degrees only matter for non-gateways; counting both ends is harmless.
    ++degree[a];
    ++degree[b];
  }
  auto [w, value] = detail::best_candidate(g, degree, is_gateway, k, capacity);
  GatewayChoice choice;
  choice.gateway = w;
  choice.served = detail::served_set(g, degree, is_gateway, k, capacity, w);
  choice.value = value;
  return choice;
}

// Full greedy construction. Returns a canonical solution that validates
// feasible for every instance (an isolated vertex simply becomes a gateway
// itself, so no instance is unsolvable).
inline PlacementSolution create_connection_graph(const ProblemInstance& instance) {
  const VisibilityGraph& g = instance.graph;
  const std::uint32_t n = g.vertex_count();
  const auto uk = static_cast<std::uint32_t>(instance.k);
  PlacementSolution out;
  if (n == 0) return out;

  std::vector<std::uint32_t> degree(n, 0);
  std::vector<char> is_gateway(n, 0);
  std::vector<std::vector<std::uint32_t>> servers(n);  // gateways serving each station
  std::size_t pending = n;  // |{v outside D with fewer than k serving links}|

  while (pending > 0) {
    auto [w, value] = detail::best_candidate(g, degree, is_gateway, instance.k, instance.capacity);
    auto served = detail::served_set(g, degree, is_gateway, instance.k, instance.capacity, w);
    (void)value;
    // Promote w. Its own serving links are dropped: membership in the
    // gateway set covers w, and a connection must join a gateway to a
    // station, never two gateways.
    if (degree[w] < uk) --pending;
    is_gateway[w] = 1;
    servers[w].clear();
    degree[w] = 0;
    for (std::uint32_t v : served) {
      servers[v].push_back(w);
      if (++degree[v] == uk) --pending;
    }
    out.gateways.push_back(w);
    if (out.gateways.size() > n) throw std::logic_error("create_connection_graph: failed to terminate");
  }

  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t gw : servers[v]) out.connections.emplace_back(v, gw);
  out.canonicalize();
  return out;
}

enum class ViolationKind {
  edge_endpoint,      // connection does not join one gateway and one station
  not_subgraph,       // connection is not an edge of the visibility graph
  under_dominated,    // station has fewer than k serving connections
  capacity_exceeded,  // gateway load above capacity
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::edge_endpoint: return "edge-endpoint";
    case ViolationKind::not_subgraph: return "not-subgraph";
    case ViolationKind::under_dominated: return "under-dominated";
    case ViolationKind::capacity_exceeded: return "capacity-exceeded";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  bool is_edge = false;  // true: (u, v) is a connection; false: u is a vertex
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::string detail;
};

struct ValidationReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Check a solution against the instance it claims to solve. Connections are
// unordered pairs and a set: duplicates collapse before any accounting. A
// pair is accepted in either (station, gateway) or (gateway, station) order.
inline ValidationReport validate_solution(const ProblemInstance& instance,
                                          const PlacementSolution& solution) {
  const VisibilityGraph& g = instance.graph;
  const std::uint32_t n = g.vertex_count();
  ValidationReport report;
  auto flag_edge = [&](ViolationKind kind, std::uint32_t a, std::uint32_t b, std::string detail) {
    report.violations.push_back({kind, true, a, b, std::move(detail)});
  };
  auto flag_vertex = [&](ViolationKind kind, std::uint32_t v, std::string detail) {
    report.violations.push_back({kind, false, v, 0, std::move(detail)});
  };

  std::vector<char> is_gateway(n, 0);
  std::vector<std::uint32_t> gateways;
  for (std::uint32_t gw : solution.gateways) {
    if (gw >= n) {
      flag_vertex(ViolationKind::not_subgraph, gw, "gateway id out of range");
      continue;
    }
    if (!is_gateway[gw]) gateways.push_back(gw);
    is_gateway[gw] = 1;
  }
  std::sort(gateways.begin(), gateways.end());

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(solution.connections.size());
  for (const auto& [a, b] : solution.connections)
    edges.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<std::uint32_t> degree(n, 0);
  std::vector<std::int64_t> load(n, 0);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      flag_edge(ViolationKind::not_subgraph, a, b, "endpoint out of range");
      continue;
    }
    if (a == b) {
      flag_edge(ViolationKind::edge_endpoint, a, b, "connects a vertex to itself");
      continue;
    }
    const bool ga = is_gateway[a] != 0;
    const bool gb = is_gateway[b] != 0;
    if (ga == gb) {
      flag_edge(ViolationKind::edge_endpoint, a, b,
                ga ? "joins two gateways" : "joins two stations");
      continue;
    }
    const std::uint32_t station = ga ? b : a;
    const std::uint32_t gateway = ga ? a : b;
    const auto edge = g.find_edge(a, b);
    if (!edge) {
      flag_edge(ViolationKind::not_subgraph, a, b, "not an edge of the visibility graph");
      continue;
    }
    ++degree[station];
    load[gateway] += edge->cost_num32;
  }

  for (std::uint32_t v = 0; v < n; ++v) {
    if (is_gateway[v] || degree[v] >= static_cast<std::uint32_t>(instance.k)) continue;
    flag_vertex(ViolationKind::under_dominated, v,
                "station has " + std::to_string(degree[v]) + " of " +
                    std::to_string(instance.k) + " required connections");
  }
  for (std::uint32_t gw : gateways) {
    if (capacity_admits(load[gw], 0, instance.capacity)) continue;
    flag_vertex(ViolationKind::capacity_exceeded, gw,
                "load " + std::to_string(load[gw]) + "/32 = " +
                    format_double(static_cast<double>(load[gw]) / 32.0) +
                    " exceeds capacity " + format_double(instance.capacity));
  }

  report.feasible = report.violations.empty();
  return report;
}

}  // namespace gwplan
