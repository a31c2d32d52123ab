#pragma once
// Station topologies: uniform random generation and CSV persistence.
//
// CSV schema: header "id,x,y" (or "x,y", in which case ids are assigned by
// row order), one node per row, LF or CRLF line endings. Coordinates are
// written with 17 significant digits so save -> load -> save is
// byte-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwplan/errors.hpp"
#include "gwplan/rng.hpp"
#include "gwplan/text.hpp"

namespace gwplan {

struct Node {
  std::uint32_t id = 0;
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  friend bool operator==(const Node&, const Node&) = default;
};

struct Topology {
  std::vector<Node> nodes;
  // Deployment area. Generation sets these to the requested rectangle; the
  // CSV format does not carry them, so loading infers the bounding box.
  double area_width = 0.0;
  double area_height = 0.0;

  friend bool operator==(const Topology&, const Topology&) = default;
};

// n points drawn independently and uniformly from [0,width] x [0,height].
// Pure function of its arguments: same inputs give a bit-identical topology.
inline Topology generate_topology(std::size_t n, double width, double height,
                                  std::uint64_t seed) {
  if (!(width > 0.0) || !std::isfinite(width) || !(height > 0.0) || !std::isfinite(height))
    throw std::invalid_argument("generate_topology: area dimensions must be positive and finite");
  Topology topo;
  topo.area_width = width;
  topo.area_height = height;
  topo.nodes.resize(n);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    topo.nodes[i].id = static_cast<std::uint32_t>(i);
    topo.nodes[i].x = rng.next_double() * width;
    topo.nodes[i].y = rng.next_double() * height;
  }
  return topo;
}

inline void save_topology(const Topology& topo, std::ostream& out) {
  out << "id,x,y\n";
  for (const Node& node : topo.nodes)
    out << node.id << ',' << format_double(node.x) << ',' << format_double(node.y) << '\n';
}

inline void save_topology(const Topology& topo, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  save_topology(topo, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

inline Topology load_topology(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError(1, "missing header, expected 'id,x,y' or 'x,y'");
  std::string_view header = strip_cr(raw);
  bool has_id;
  if (header == "id,x,y") {
    has_id = true;
  } else if (header == "x,y") {
    has_id = false;
  } else {
    throw ParseError(1, "bad header '" + std::string(header) + "', expected 'id,x,y' or 'x,y'");
  }

  struct Row {
    std::uint32_t id;
    double x, y;
    int line;
  };
  std::vector<Row> rows;
  int lineno = 1;
  const std::size_t want_cols = has_id ? 3 : 2;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = strip_cr(raw);
    if (line.empty()) continue;  // tolerate blank lines
    auto cells = split(line, ',');
    if (cells.size() != want_cols)
      throw ParseError(lineno, "expected " + std::to_string(want_cols) + " columns, got " +
                                   std::to_string(cells.size()));
    Row row{};
    row.line = lineno;
    std::size_t at = 0;
    if (has_id) {
      if (!parse_integer(trim(cells[at]), row.id))
        throw ParseError(lineno, "bad id '" + std::string(cells[at]) + "'");
      ++at;
    } else {
      row.id = static_cast<std::uint32_t>(rows.size());
    }
    if (!parse_double(trim(cells[at]), row.x))
      throw ParseError(lineno, "bad x coordinate '" + std::string(cells[at]) + "'");
    if (!parse_double(trim(cells[at + 1]), row.y))
      throw ParseError(lineno, "bad y coordinate '" + std::string(cells[at + 1]) + "'");
    if (!std::isfinite(row.x) || !std::isfinite(row.y))
      throw ParseError(lineno, "coordinates must be finite");
    rows.push_back(row);
  }

  // ids must be exactly 0..n-1 (any order). n rows with all ids < n and no
  // duplicates pins that down.
  const std::size_t n = rows.size();
  std::vector<int> line_of(n, 0);
  for (const Row& row : rows) {
    if (row.id >= n)
      throw ParseError(row.line, "id " + std::to_string(row.id) + " out of range for " +
                                     std::to_string(n) + " rows (ids must be 0.." +
                                     std::to_string(n == 0 ? 0 : n - 1) + ")");
    if (line_of[row.id] != 0)
      throw ParseError(row.line, "duplicate id " + std::to_string(row.id) +
                                     " (first seen on line " + std::to_string(line_of[row.id]) + ")");
    line_of[row.id] = row.line;
  }

  Topology topo;
  topo.nodes.resize(n);
  for (const Row& row : rows) {
    topo.nodes[row.id] = Node{row.id, row.x, row.y};
    topo.area_width = std::max(topo.area_width, row.x);
    topo.area_height = std::max(topo.area_height, row.y);
  }
  return topo;
}

inline Topology load_topology(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return load_topology(in);
}

}  // namespace gwplan
