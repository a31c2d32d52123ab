#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "gwplan/radio.hpp"
#include "gwplan/topology.hpp"

using gwplan::build_visibility_graph;
using gwplan::PropagationParams;
using gwplan::received_power;
using gwplan::sf_for_link;
using gwplan::Topology;

namespace {

// All frozen expectations below assume these reference settings.
PropagationParams reference_params() {
  PropagationParams p;
  p.tx_power_dbm = 14.0;
  p.pl0_dbm = 31.5;
  p.d0 = 1.0;
  p.gamma = 3.0;
  p.shadowing_sigma_db = 0.0;
  return p;
}

}  // namespace

TEST_CASE("received power at the reference distance is tx minus pl0") {
  const PropagationParams p = reference_params();
  CHECK(received_power(1.0, 0.0, p) == Catch::Approx(-17.5).margin(1e-12));
  // Distances below d0 clamp to d0.
  CHECK(received_power(0.5, 0.0, p) == received_power(1.0, 0.0, p));
  CHECK(received_power(0.0, 0.0, p) == Catch::Approx(-17.5).margin(1e-12));
}

TEST_CASE("received power follows the log-distance law") {
  const PropagationParams p = reference_params();
  // 14 - (31.5 + 10 * 3 * log10(4000)) = -125.5618 dBm.
  CHECK(received_power(4000.0, 0.0, p) == Catch::Approx(-125.5618).margin(5e-4));
  // Shadowing shifts the result one-for-one.
  CHECK(received_power(4000.0, 6.25, p) ==
        Catch::Approx(received_power(4000.0, 0.0, p) - 6.25).margin(1e-12));
  CHECK_THROWS_AS(received_power(-1.0, 0.0, p), std::invalid_argument);
}

TEST_CASE("links take the lowest SF whose sensitivity is met") {
  const PropagationParams p = reference_params();
  CHECK(sf_for_link(1.0, 0.0, p)->value() == 7);
  // -125.56 dBm misses SF7's -123 but meets SF8's -126.
  CHECK(sf_for_link(4000.0, 0.0, p)->value() == 8);
  CHECK(!sf_for_link(1e6, 0.0, p).has_value());

  // Equality with a sensitivity counts as reachable: rx at d0 is exactly
  // tx - pl0 = -123, the SF7 threshold.
  PropagationParams tie = reference_params();
  tie.pl0_dbm = 137.0;
  CHECK(sf_for_link(1.0, 0.0, tie)->value() == 7);
  // One step further and only SF8 catches it.
  CHECK(sf_for_link(1.001, 0.0, tie)->value() == 8);
}

TEST_CASE("assigned SF is monotone in distance without shadowing") {
  const PropagationParams p = reference_params();
  int last = 7;
  for (double d = 1.0; d < 20000.0; d *= 1.07) {
    const auto sf = sf_for_link(d, 0.0, p);
    if (!sf) break;  // once out of range, stays out (checked by loop end)
    CHECK(sf->value() >= last);
    last = sf->value();
  }
  CHECK(last == 12);
}

TEST_CASE("propagation parameters are validated") {
  PropagationParams p = reference_params();
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.shadowing_sigma_db = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.d0 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.sensitivity_dbm[1] = p.sensitivity_dbm[0];  // must strictly decrease
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("a line of stations gets the expected rings of edges") {
  // Nodes every 3 km. With the reference settings: 3 km -> SF7 (-121.8 dBm),
  // 6 km -> SF10 (-130.8), 9 km -> SF12 (-136.1), 12 km -> out of range.
  Topology topo;
  for (std::uint32_t i = 0; i < 5; ++i)
    topo.nodes.push_back({i, 3000.0 * i, 0.0});
  topo.area_width = 12000.0;
  topo.area_height = 1.0;

  const auto g = build_visibility_graph(topo, reference_params(), 1);
  CHECK(g.edge_count() == 9);
  for (std::uint32_t i = 0; i + 1 < 5; ++i) {
    REQUIRE(g.find_edge(i, i + 1));
    CHECK(g.find_edge(i, i + 1)->sf == 7);
  }
  for (std::uint32_t i = 0; i + 2 < 5; ++i) {
    REQUIRE(g.find_edge(i, i + 2));
    CHECK(g.find_edge(i, i + 2)->sf == 10);
  }
  for (std::uint32_t i = 0; i + 3 < 5; ++i) {
    REQUIRE(g.find_edge(i, i + 3));
    CHECK(g.find_edge(i, i + 3)->sf == 12);
  }
  CHECK(!g.find_edge(0, 4));
}

TEST_CASE("co-located nodes link at SF7") {
  Topology topo;
  topo.nodes = {{0, 5.0, 5.0}, {1, 5.0, 5.0}};
  topo.area_width = topo.area_height = 10.0;
  const auto g = build_visibility_graph(topo, reference_params(), 1);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.find_edge(0, 1)->sf == 7);
  CHECK(g.find_edge(0, 1)->cost() == 0.03125);
}

TEST_CASE("trivial topologies build empty graphs") {
  Topology empty;
  CHECK(build_visibility_graph(empty, reference_params(), 1).vertex_count() == 0);
  Topology one;
  one.nodes = {{0, 1.0, 1.0}};
  one.area_width = one.area_height = 2.0;
  const auto g = build_visibility_graph(one, reference_params(), 1);
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("graph construction matches a direct per-pair evaluation") {
  PropagationParams p = reference_params();
  p.shadowing_sigma_db = 4.0;
  const std::uint64_t seed = 321;
  const Topology topo = gwplan::generate_topology(60, 4000.0, 4000.0, 11);
  const auto g = build_visibility_graph(topo, p, seed);

  std::size_t expected_edges = 0;
  for (std::uint32_t i = 0; i < 60; ++i)
    for (std::uint32_t j = i + 1; j < 60; ++j) {
      const double dx = topo.nodes[i].x - topo.nodes[j].x;
      const double dy = topo.nodes[i].y - topo.nodes[j].y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      const double shadow = p.shadowing_sigma_db * gwplan::pair_normal(seed, i, j);
      const auto sf = sf_for_link(dist, shadow, p);
      const auto edge = g.find_edge(i, j);
      const auto reverse = g.find_edge(j, i);
      CHECK(edge.has_value() == sf.has_value());
      CHECK(reverse.has_value() == sf.has_value());
      if (sf && edge) {
        ++expected_edges;
        CHECK(edge->sf == sf->value());
        CHECK(reverse->sf == sf->value());
      }
    }
  CHECK(g.edge_count() == expected_edges);
}

TEST_CASE("shadowed builds are reproducible and thread-count independent") {
  PropagationParams p = reference_params();
  p.shadowing_sigma_db = 4.0;
  const Topology topo = gwplan::generate_topology(400, 6000.0, 6000.0, 3);
  const auto serial = build_visibility_graph(topo, p, 9, 1);
  const auto repeat = build_visibility_graph(topo, p, 9, 1);
  const auto threaded = build_visibility_graph(topo, p, 9, 4);
  CHECK(serial == repeat);
  CHECK(serial == threaded);
  const auto other_seed = build_visibility_graph(topo, p, 10, 1);
  CHECK(serial != other_seed);
}
