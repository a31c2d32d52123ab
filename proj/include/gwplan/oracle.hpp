#pragma once
// Exhaustive oracle for tiny instances: the true minimum number of gateways,
// with a feasible witness. Intended for cross-checking the greedy solver in
// tests, not for production sizes; anything beyond 12 vertices is refused.
//
// Enumeration is deterministic: candidate gateway sets are tried by size,
// then in lexicographic id order, and the first feasible set wins. For each
// set, assignment feasibility (can every station pick k adjacent gateways
// without busting any gateway's budget?) is decided by backtracking over
// stations, with a memo of (station index, remaining budgets) states already
// proven dead.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gwplan/graph.hpp"
#include "gwplan/solver.hpp"

namespace gwplan {

class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  std::size_t optimal_size = 0;
  PlacementSolution witness;
};

namespace detail {

class AssignmentSearch {
 public:
  AssignmentSearch(const VisibilityGraph& g, const std::vector<std::uint32_t>& gateways,
                   int k, double capacity)
      : graph_(g), gateways_(gateways), k_(k), capacity_(capacity) {}

  // On success fills `connections` with (station, gateway) pairs.
  bool run(std::vector<std::pair<std::uint32_t, std::uint32_t>>& connections) {
    const std::uint32_t n = graph_.vertex_count();
    std::vector<char> is_gateway(n, 0);
    std::vector<std::uint32_t> slot(n, 0);  // gateway id -> budget index
    for (std::size_t i = 0; i < gateways_.size(); ++i) {
      is_gateway[gateways_[i]] = 1;
      slot[gateways_[i]] = static_cast<std::uint32_t>(i);
    }

    for (std::uint32_t v = 0; v < n; ++v) {
      if (is_gateway[v]) continue;
      Station st;
      st.id = v;
      for (const Edge& e : graph_.neighbors(v))
        if (is_gateway[e.to]) st.options.push_back({slot[e.to], e.cost_num32});
      if (st.options.size() < static_cast<std::size_t>(k_)) return false;  // cannot reach k gateways
      stations_.push_back(std::move(st));
    }
    // Most constrained stations first keeps the search shallow.
    std::sort(stations_.begin(), stations_.end(), [](const Station& a, const Station& b) {
      if (a.options.size() != b.options.size()) return a.options.size() < b.options.size();
      return a.id < b.id;
    });

    loads_.assign(gateways_.size(), 0);
    if (!place(0)) return false;
    for (const Station& st : stations_)
      for (std::size_t idx : st.chosen)
        connections.emplace_back(st.id, gateways_[st.options[idx].slot]);
    return true;
  }

 private:
  struct Option {
    std::uint32_t slot;
    int cost_num32;
  };
  struct Station {
    std::uint32_t id = 0;
    std::vector<Option> options;       // adjacent gateways, ascending id
    std::vector<std::size_t> chosen;   // indices into options for the witness
  };

  bool place(std::size_t index) {
    if (index == stations_.size()) return true;
    if (failed_.count({index, loads_})) return false;
    Station& st = stations_[index];
    std::vector<std::size_t> pick;
    if (choose(st, 0, pick, index)) return true;
    failed_.insert({index, loads_});
    return false;
  }

  // Enumerate k-subsets of st.options in lexicographic order.
  bool choose(Station& st, std::size_t from, std::vector<std::size_t>& pick, std::size_t index) {
    if (pick.size() == static_cast<std::size_t>(k_)) {
      st.chosen = pick;
      return place(index + 1);
    }
    const std::size_t need = static_cast<std::size_t>(k_) - pick.size();
    for (std::size_t i = from; i + need <= st.options.size(); ++i) {
      const Option& opt = st.options[i];
      if (!capacity_admits(loads_[opt.slot], opt.cost_num32, capacity_)) continue;
      loads_[opt.slot] += opt.cost_num32;
      pick.push_back(i);
      if (choose(st, i + 1, pick, index)) return true;
      pick.pop_back();
      loads_[opt.slot] -= opt.cost_num32;
    }
    return false;
  }

  const VisibilityGraph& graph_;
  const std::vector<std::uint32_t>& gateways_;
  int k_;
  double capacity_;
  std::vector<Station> stations_;
  std::vector<std::int64_t> loads_;
  // Exact keys (no hashing) so a collision can never fake a dead end.
  std::set<std::pair<std::size_t, std::vector<std::int64_t>>> failed_;
};

}  // namespace detail

inline OracleResult exact_min_gateways(const ProblemInstance& instance) {
  const VisibilityGraph& g = instance.graph;
  const std::uint32_t n = g.vertex_count();
  if (n > 12)
    throw SizeLimitError("exact_min_gateways: limited to 12 vertices, got " + std::to_string(n));

  std::vector<std::uint32_t> combo;
  for (std::uint32_t size = 0; size <= n; ++size) {
    // First lexicographic size-subset: {0, 1, ..., size-1}.
    combo.resize(size);
    for (std::uint32_t i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> connections;
      detail::AssignmentSearch search(g, combo, instance.k, instance.capacity);
      if (search.run(connections)) {
        OracleResult result;
        result.optimal_size = size;
        result.witness.gateways = combo;
        result.witness.connections = std::move(connections);
        result.witness.canonicalize();
        return result;
      }
      // Advance to the next lexicographic combination of `size` out of n.
      std::uint32_t i = size;
      while (i > 0 && combo[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::uint32_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  // D = V has no stations to serve, so the loop always returns by then.
  throw std::logic_error("exact_min_gateways: enumeration exhausted unexpectedly");
}

}  // namespace gwplan
