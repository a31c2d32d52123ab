#pragma once
// Radio visibility graph and the placement problem instance built on it.
//
// Vertices are station ids 0..n-1. An undirected edge means the two nodes
// can hear each other, labeled with the lowest spreading factor that closes
// the link. Capacity arithmetic works on integer cost numerators (units of
// 1/32) so feasibility checks never suffer floating-point drift: comparing
// an integer-valued double below 2^53 against capacity*32.0 is exact because
// scaling by 32 only shifts the exponent.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gwplan/sf.hpp"

namespace gwplan {

struct Edge {
  std::uint32_t to = 0;
  std::uint8_t sf = SpreadingFactor::kMin;  // 7..12, valid by construction
  std::uint8_t cost_num32 = 1;              // 1 << (sf - 7)

  SpreadingFactor spreading_factor() const { return SpreadingFactor(sf); }
  double cost() const { return static_cast<double>(cost_num32) / 32.0; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

class VisibilityGraph {
 public:
  VisibilityGraph() = default;
  explicit VisibilityGraph(std::uint32_t vertex_count) : adj_(vertex_count) {}

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(adj_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  void add_edge(std::uint32_t u, std::uint32_t v, SpreadingFactor sf) {
    if (u >= vertex_count() || v >= vertex_count())
      throw std::invalid_argument("add_edge: vertex out of range");
    if (u == v) throw std::invalid_argument("add_edge: self-loops are not allowed");
    insert_half(u, v, sf);
    insert_half(v, u, sf);
    ++edge_count_;
  }

  // Adjacency of v in ascending neighbor-id order.
  std::span<const Edge> neighbors(std::uint32_t v) const {
    if (v >= vertex_count()) throw std::invalid_argument("neighbors: vertex out of range");
    return adj_[v];
  }

  std::optional<Edge> find_edge(std::uint32_t u, std::uint32_t v) const {
    if (u >= vertex_count() || v >= vertex_count())
      throw std::invalid_argument("find_edge: vertex out of range");
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Edge& e, std::uint32_t id) { return e.to < id; });
    if (it == list.end() || it->to != v) return std::nullopt;
    return *it;
  }

  friend bool operator==(const VisibilityGraph&, const VisibilityGraph&) = default;

 private:
  void insert_half(std::uint32_t u, std::uint32_t v, SpreadingFactor sf) {
    auto& list = adj_[u];
    Edge e{v, static_cast<std::uint8_t>(sf.value()),
           static_cast<std::uint8_t>(link_cost_num32(sf))};
    // Bulk construction appends in ascending order; keep that path O(1).
    if (list.empty() || list.back().to < v) {
      list.push_back(e);
      return;
    }
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Edge& a, std::uint32_t id) { return a.to < id; });
    if (it != list.end() && it->to == v)
      throw std::invalid_argument("add_edge: parallel edge");
    list.insert(it, e);
  }

  std::vector<std::vector<Edge>> adj_;
  std::size_t edge_count_ = 0;
};

// Exact test for adding one link of cost cost_num32/32 to a gateway already
// carrying load_num32/32 under budget `capacity`.
inline bool capacity_admits(std::int64_t load_num32, int cost_num32, double capacity) {
  return static_cast<double>(load_num32 + cost_num32) <= capacity * 32.0;
}

struct ProblemInstance {
  VisibilityGraph graph;
  double capacity = 40.0;  // per-gateway budget on the sum of connection costs
  int k = 1;               // gateways required per station

  ProblemInstance(VisibilityGraph g, double capacity_, int k_)
      : graph(std::move(g)), capacity(capacity_), k(k_) {
    if (!(capacity > 0.0)) throw std::invalid_argument("capacity must be positive");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
  }
};

// Gateway placement plus the explicit station-to-gateway connection scheme.
// Canonical form: gateways ascending; connections (station, gateway) pairs
// in ascending lexicographic order. Solvers and loaders emit canonical form,
// which is what makes serialized solutions byte-identical across runs.
struct PlacementSolution {
  std::vector<std::uint32_t> gateways;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> connections;

  void canonicalize() {
    std::sort(gateways.begin(), gateways.end());
    gateways.erase(std::unique(gateways.begin(), gateways.end()), gateways.end());
    std::sort(connections.begin(), connections.end());
    connections.erase(std::unique(connections.begin(), connections.end()), connections.end());
  }

  friend bool operator==(const PlacementSolution&, const PlacementSolution&) = default;
};

// Coverage deficit a(G, D) = n*k - sum_v d_k(v, D), where d_k counts how
// much of the k-fold coverage requirement D already meets for v: a full k
// for members of D, and min(k, |N(v) cap D|) otherwise. Zero exactly when D
// k-dominates the graph.
inline std::uint64_t coverage_deficit(const VisibilityGraph& g,
                                      std::span<const std::uint32_t> dominators, int k) {
  if (k < 1) throw std::invalid_argument("coverage_deficit: k must be at least 1");
  const std::uint32_t n = g.vertex_count();
  std::vector<char> in_d(n, 0);
  for (std::uint32_t v : dominators) {
    if (v >= n) throw std::invalid_argument("coverage_deficit: dominator out of range");
    in_d[v] = 1;
  }
  const auto uk = static_cast<std::uint64_t>(k);
  std::uint64_t credit = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (in_d[v]) {
      credit += uk;
      continue;
    }
    std::uint64_t have = 0;
    for (const Edge& e : g.neighbors(v))
      if (in_d[e.to] && ++have == uk) break;
    credit += have;
  }
  return static_cast<std::uint64_t>(n) * uk - credit;
}

}  // namespace gwplan
