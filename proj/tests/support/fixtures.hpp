#pragma once
// Shared test fixtures: tiny graph builders and random instances.

#include <cstdint>
#include <utility>
#include <vector>

#include "gwplan/graph.hpp"
#include "gwplan/rng.hpp"
#include "gwplan/sf.hpp"

namespace testsupport {

struct EdgeSpec {
  std::uint32_t u, v;
  int sf = 7;
};

inline gwplan::VisibilityGraph make_graph(std::uint32_t n, const std::vector<EdgeSpec>& edges) {
  gwplan::VisibilityGraph g(n);
  for (const auto& e : edges) g.add_edge(e.u, e.v, gwplan::SpreadingFactor(e.sf));
  return g;
}

// Complete graph, uniform random SF per edge.
inline gwplan::VisibilityGraph complete_graph(std::uint32_t n, std::uint64_t seed) {
  gwplan::SplitMix64 rng(seed);
  gwplan::VisibilityGraph g(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      g.add_edge(i, j, gwplan::SpreadingFactor(7 + static_cast<int>(rng.next() % 6)));
  return g;
}

// Path 0-1-2-...-(n-1), all edges at the given SF.
inline gwplan::VisibilityGraph path_graph(std::uint32_t n, int sf = 7) {
  gwplan::VisibilityGraph g(n);
  for (std::uint32_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, gwplan::SpreadingFactor(sf));
  return g;
}

// Star: vertex 0 is the hub, leaves 1..n-1, all edges at the given SF.
inline gwplan::VisibilityGraph star_graph(std::uint32_t n, int sf = 7) {
  gwplan::VisibilityGraph g(n);
  for (std::uint32_t i = 1; i < n; ++i) g.add_edge(0, i, gwplan::SpreadingFactor(sf));
  return g;
}

// Erdos-Renyi G(n, p) with uniform random SFs. Exercises structures the
// geometric pipeline rarely produces (isolated vertices, odd degree mixes).
inline gwplan::VisibilityGraph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
  gwplan::SplitMix64 rng(seed);
  gwplan::VisibilityGraph g(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double coin = rng.next_double();
      const int sf = 7 + static_cast<int>(rng.next() % 6);
      if (coin < p) g.add_edge(i, j, gwplan::SpreadingFactor(sf));
    }
  return g;
}

}  // namespace testsupport
