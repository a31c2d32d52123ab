#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "gwplan/graph.hpp"
#include "gwplan/io.hpp"
#include "gwplan/solver.hpp"
#include "support/fixtures.hpp"

using gwplan::load_solution;
using gwplan::ParseError;
using gwplan::PlacementSolution;
using gwplan::save_solution;
using gwplan::ValidationReport;
using gwplan::Violation;
using gwplan::ViolationKind;
using testsupport::make_graph;

TEST_CASE("solution JSON has a fixed canonical layout") {
  PlacementSolution s;
  s.gateways = {0, 5};
  s.connections = {{1, 0}, {2, 5}};
  std::ostringstream out;
  save_solution(s, out);
  CHECK(out.str() ==
        "{\n"
        "  \"gateways\": [\n"
        "    0,\n"
        "    5\n"
        "  ],\n"
        "  \"connections\": [\n"
        "    [\n"
        "      1,\n"
        "      0\n"
        "    ],\n"
        "    [\n"
        "      2,\n"
        "      5\n"
        "    ]\n"
        "  ]\n"
        "}\n");
}

TEST_CASE("solutions survive a byte-identical round trip") {
  PlacementSolution s;
  s.gateways = {3, 1};
  s.connections = {{4, 3}, {0, 1}, {2, 3}};
  s.canonicalize();

  std::ostringstream first;
  save_solution(s, first);
  std::istringstream in(first.str());
  const PlacementSolution loaded = load_solution(in);
  CHECK(loaded == s);

  std::ostringstream second;
  save_solution(loaded, second);
  CHECK(second.str() == first.str());
}

TEST_CASE("loading canonicalizes stray ordering and duplicates") {
  std::istringstream in(
      "{\"gateways\": [5, 0, 5], \"connections\": [[2, 5], [1, 0], [2, 5]]}");
  const PlacementSolution s = load_solution(in);
  CHECK(s.gateways == std::vector<std::uint32_t>{0, 5});
  CHECK(s.connections ==
        std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 0}, {2, 5}});
}

TEST_CASE("an empty solution still round-trips") {
  PlacementSolution s;
  std::ostringstream out;
  save_solution(s, out);
  std::istringstream in(out.str());
  CHECK(load_solution(in) == s);
}

TEST_CASE("malformed solution JSON is rejected with context") {
  auto load_text = [](const std::string& text) {
    std::istringstream in(text);
    return load_solution(in);
  };
  CHECK_THROWS_AS(load_text("not json at all"), ParseError);
  CHECK_THROWS_AS(load_text("[1, 2, 3]"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": [0]}"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": 7, \"connections\": []}"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": [-1], \"connections\": []}"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": [0.5], \"connections\": []}"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": [], \"connections\": [[1]]}"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": [], \"connections\": [[1, 2, 3]]}"), ParseError);
  CHECK_THROWS_AS(load_text("{\"gateways\": [4294967296], \"connections\": []}"), ParseError);
  try {
    load_text("{\"gateways\": [0]}");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("connections") != std::string::npos);
  }
}

TEST_CASE("missing solution files raise IoError") {
  CHECK_THROWS_AS(load_solution(std::string("/no/such/dir/solution.json")), gwplan::IoError);
  PlacementSolution s;
  CHECK_THROWS_AS(save_solution(s, std::string("/no/such/dir/solution.json")), gwplan::IoError);
}

TEST_CASE("edge list CSV is ordered and exact") {
  const auto g = make_graph(4, {{2, 3, 12}, {0, 1, 7}, {0, 3, 9}});
  std::ostringstream out;
  gwplan::write_edge_list_csv(g, out);
  CHECK(out.str() ==
        "u,v,sf,cost\n"
        "0,1,7,0.03125\n"
        "0,3,9,0.125\n"
        "2,3,12,1\n");
}

TEST_CASE("feasible reports render a single line") {
  ValidationReport report;
  report.feasible = true;
  CHECK(gwplan::validation_report_text(report) == "feasible: no violations\n");
  const auto j = gwplan::validation_report_json(report);
  CHECK(j["feasible"] == true);
  CHECK(j["violations"].empty());
}

TEST_CASE("violations render kind, location, and detail") {
  ValidationReport report;
  report.feasible = false;
  report.violations.push_back(
      Violation{ViolationKind::capacity_exceeded, false, 3, 0, "load 64/32 = 2 exceeds capacity 1"});
  report.violations.push_back(
      Violation{ViolationKind::not_subgraph, true, 1, 5, "not an edge of the visibility graph"});
  const std::string text = gwplan::validation_report_text(report);
  CHECK(text.find("infeasible: 2 violations") == 0);
  CHECK(text.find("[capacity-exceeded] vertex 3: load 64/32") != std::string::npos);
  CHECK(text.find("[not-subgraph] connection (1, 5):") != std::string::npos);

  const auto j = gwplan::validation_report_json(report);
  CHECK(j["feasible"] == false);
  REQUIRE(j["violations"].size() == 2);
  CHECK(j["violations"][0]["vertex"] == 3);
  CHECK(j["violations"][1]["connection"][1] == 5);
}

TEST_CASE("single violations drop the plural") {
  ValidationReport report;
  report.feasible = false;
  report.violations.push_back(Violation{ViolationKind::under_dominated, false, 2, 0, "station has 0 of 1 required connections"});
  const std::string text = gwplan::validation_report_text(report);
  CHECK(text.find("infeasible: 1 violation\n") == 0);
}
