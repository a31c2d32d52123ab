#pragma once
// Serialization: solution JSON, visibility-graph edge lists, and validation
// report rendering.
//
// Solution JSON:
//   {"gateways": [0, 5], "connections": [[1, 0], [2, 5]]}
// Connections are [station, gateway] pairs. Writers emit canonical form
// (sorted ids, fixed key order, two-space indent), so equal solutions always
// produce byte-identical files.

#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gwplan/errors.hpp"
#include "gwplan/graph.hpp"
#include "gwplan/solver.hpp"
#include "gwplan/text.hpp"

namespace gwplan {

inline nlohmann::ordered_json solution_to_json(const PlacementSolution& solution) {
  nlohmann::ordered_json j;
  j["gateways"] = solution.gateways;
  auto& conns = j["connections"] = nlohmann::ordered_json::array();
  for (const auto& [station, gateway] : solution.connections)
    conns.push_back({station, gateway});
  return j;
}

inline void save_solution(const PlacementSolution& solution, std::ostream& out) {
  out << solution_to_json(solution).dump(2) << '\n';
}

inline void save_solution(const PlacementSolution& solution, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  save_solution(solution, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

inline PlacementSolution load_solution(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("solution JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("gateways") || !j.contains("connections"))
    throw ParseError(0, "solution JSON: expected an object with 'gateways' and 'connections'");
  auto as_id = [](const nlohmann::json& value, const char* what) -> std::uint32_t {
    if (!value.is_number_unsigned() ||
        value.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max())
      throw ParseError(0, std::string("solution JSON: ") + what + " must be an id in 0..2^32-1");
    return static_cast<std::uint32_t>(value.get<std::uint64_t>());
  };
  PlacementSolution solution;
  if (!j["gateways"].is_array())
    throw ParseError(0, "solution JSON: 'gateways' must be an array");
  for (const auto& value : j["gateways"])
    solution.gateways.push_back(as_id(value, "gateway"));
  if (!j["connections"].is_array())
    throw ParseError(0, "solution JSON: 'connections' must be an array");
  for (const auto& pair : j["connections"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError(0, "solution JSON: each connection must be a [station, gateway] pair");
    solution.connections.emplace_back(as_id(pair[0], "station"), as_id(pair[1], "gateway"));
  }
  solution.canonicalize();
  return solution;
}

inline PlacementSolution load_solution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return load_solution(in);
}

// Edge list CSV: header "u,v,sf,cost", one undirected edge per row with
// u < v, ascending (u, v). Costs are dyadic so the decimal form is exact.
inline void write_edge_list_csv(const VisibilityGraph& graph, std::ostream& out) {
  out << "u,v,sf,cost\n";
  for (std::uint32_t u = 0; u < graph.vertex_count(); ++u)
    for (const Edge& e : graph.neighbors(u)) {
      if (e.to < u) continue;
      out << u << ',' << e.to << ',' << static_cast<int>(e.sf) << ',' << format_double(e.cost())
          << '\n';
    }
}

inline void write_edge_list_csv(const VisibilityGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  write_edge_list_csv(graph, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

inline std::string violation_location(const Violation& violation) {
  if (violation.is_edge)
    return "connection (" + std::to_string(violation.u) + ", " + std::to_string(violation.v) + ")";
  return "vertex " + std::to_string(violation.u);
}

inline std::string validation_report_text(const ValidationReport& report) {
  std::ostringstream out;
  if (report.feasible) {
    out << "feasible: no violations\n";
    return out.str();
  }
  out << "infeasible: " << report.violations.size() << " violation"
      << (report.violations.size() == 1 ? "" : "s") << '\n';
  for (const Violation& violation : report.violations)
    out << "  [" << to_string(violation.kind) << "] " << violation_location(violation) << ": "
        << violation.detail << '\n';
  return out.str();
}

inline nlohmann::ordered_json validation_report_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["feasible"] = report.feasible;
  auto& list = j["violations"] = nlohmann::ordered_json::array();
  for (const Violation& violation : report.violations) {
    nlohmann::ordered_json item;
    item["kind"] = to_string(violation.kind);
    if (violation.is_edge)
      item["connection"] = {violation.u, violation.v};
    else
      item["vertex"] = violation.u;
    item["detail"] = violation.detail;
    list.push_back(std::move(item));
  }
  return j;
}

}  // namespace gwplan
