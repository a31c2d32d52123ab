#pragma once
// Self-contained SVG renderings: a placement map (stations, gateways,
// connection segments colored by SF) and an SF share histogram. No external
// assets, all geometry inside the declared viewBox.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gwplan/errors.hpp"
#include "gwplan/graph.hpp"
#include "gwplan/sf.hpp"
#include "gwplan/text.hpp"
#include "gwplan/topology.hpp"

namespace gwplan {

// Fill colors per spreading factor, SF7 (short range, green) to SF12 (edge
// of range, red).
inline constexpr std::array<const char*, kSfClassCount> kSfPalette = {
    "#1a9850", "#66bd63", "#b8c44a", "#fdae61", "#f46d43", "#d73027"};

namespace detail {

inline std::string px(double v) { return format_double(v, 6); }

}  // namespace detail

// Placement map. The graph supplies the SF (and hence color) of each
// connection segment; a connection that is not a graph edge is an error.
inline void write_placement_svg(const Topology& topo, const VisibilityGraph& graph,
                                const PlacementSolution& solution, std::ostream& out) {
  const double area_w = topo.area_width > 0.0 ? topo.area_width : 1.0;
  const double area_h = topo.area_height > 0.0 ? topo.area_height : 1.0;

  const double content_w = 760.0;
  const double content_h = std::clamp(content_w * area_h / area_w, 120.0, 1400.0);
  const double margin_l = 50.0, margin_t = 20.0, margin_r = 20.0;
  const double legend_h = 58.0;
  const double width = margin_l + content_w + margin_r;
  const double height = margin_t + content_h + 34.0 + legend_h;

  // SVG y grows downward; flip so the origin sits bottom-left like the map.
  auto sx = [&](double x) { return margin_l + x / area_w * content_w; };
  auto sy = [&](double y) { return margin_t + (1.0 - y / area_h) * content_h; };

  std::vector<char> is_gateway(topo.nodes.size(), 0);
  for (std::uint32_t gw : solution.gateways) {
    if (gw >= topo.nodes.size())
      throw std::invalid_argument("write_placement_svg: gateway id out of range");
    is_gateway[gw] = 1;
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::px(width)
      << "\" height=\"" << detail::px(height) << "\" viewBox=\"0 0 " << detail::px(width) << ' '
      << detail::px(height) << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << detail::px(width) << "\" height=\""
      << detail::px(height) << "\" fill=\"#ffffff\"/>\n";
  out << "  <rect class=\"frame\" x=\"" << detail::px(margin_l) << "\" y=\"" << detail::px(margin_t)
      << "\" width=\"" << detail::px(content_w) << "\" height=\"" << detail::px(content_h)
      << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  // Axis extents in meters.
  const double axis_y = margin_t + content_h + 16.0;
  out << "  <text x=\"" << detail::px(margin_l) << "\" y=\"" << detail::px(axis_y)
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">0</text>\n";
  out << "  <text x=\"" << detail::px(margin_l + content_w) << "\" y=\"" << detail::px(axis_y)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">"
      << format_double(area_w, 6) << " m</text>\n";
  out << "  <text x=\"" << detail::px(margin_l - 6.0) << "\" y=\"" << detail::px(margin_t + 10.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">"
      << format_double(area_h, 6) << " m</text>\n";
  out << "  <text x=\"" << detail::px(margin_l - 6.0)
      << "\" y=\"" << detail::px(margin_t + content_h)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">0</text>\n";

  out << "  <g class=\"links\" stroke-width=\"1\" stroke-opacity=\"0.75\">\n";
  for (const auto& [station, gateway] : solution.connections) {
    if (station >= topo.nodes.size() || gateway >= topo.nodes.size())
      throw std::invalid_argument("write_placement_svg: connection endpoint out of range");
    auto edge = graph.find_edge(station, gateway);
    if (!edge)
      throw std::invalid_argument("write_placement_svg: connection (" + std::to_string(station) +
                                  ", " + std::to_string(gateway) + ") is not a graph edge");
    const Node& a = topo.nodes[station];
    const Node& b = topo.nodes[gateway];
    out << "    <line class=\"link sf" << static_cast<int>(edge->sf) << "\" x1=\""
        << detail::px(sx(a.x)) << "\" y1=\"" << detail::px(sy(a.y)) << "\" x2=\""
        << detail::px(sx(b.x)) << "\" y2=\"" << detail::px(sy(b.y)) << "\" stroke=\""
        << kSfPalette[edge->sf - SpreadingFactor::kMin] << "\"/>\n";
  }
  out << "  </g>\n";

  out << "  <g class=\"stations\">\n";
  for (const Node& node : topo.nodes) {
    if (is_gateway[node.id]) continue;
    out << "    <circle class=\"station\" cx=\"" << detail::px(sx(node.x)) << "\" cy=\""
        << detail::px(sy(node.y)) << "\" r=\"2.4\" fill=\"#546e7a\"/>\n";
  }
  out << "  </g>\n";
  out << "  <g class=\"gateways\">\n";
  for (const Node& node : topo.nodes) {
    if (!is_gateway[node.id]) continue;
    out << "    <circle class=\"gateway\" cx=\"" << detail::px(sx(node.x)) << "\" cy=\""
        << detail::px(sy(node.y)) << "\" r=\"5.5\" fill=\"#111\" stroke=\"#ffffff\" stroke-width=\"1.5\"/>\n";
  }
  out << "  </g>\n";

  // Legend band: SF swatches plus the two marker kinds.
  const double legend_y = margin_t + content_h + 34.0;
  out << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  double lx = margin_l;
  for (int cls = 0; cls < kSfClassCount; ++cls) {
    out << "    <rect class=\"swatch\" x=\"" << detail::px(lx) << "\" y=\"" << detail::px(legend_y)
        << "\" width=\"12\" height=\"12\" fill=\"" << kSfPalette[cls] << "\"/>\n";
    out << "    <text x=\"" << detail::px(lx + 16.0) << "\" y=\"" << detail::px(legend_y + 10.0)
        << "\">SF" << (SpreadingFactor::kMin + cls) << "</text>\n";
    lx += 74.0;
  }
  out << "    <circle class=\"legend-station\" cx=\"" << detail::px(margin_l + 6.0) << "\" cy=\""
      << detail::px(legend_y + 30.0) << "\" r=\"2.4\" fill=\"#546e7a\"/>\n";
  out << "    <text x=\"" << detail::px(margin_l + 16.0) << "\" y=\"" << detail::px(legend_y + 34.0)
      << "\">station</text>\n";
  out << "    <circle class=\"legend-gateway\" cx=\"" << detail::px(margin_l + 86.0) << "\" cy=\""
      << detail::px(legend_y + 30.0)
      << "\" r=\"5.5\" fill=\"#111\" stroke=\"#ffffff\" stroke-width=\"1.5\"/>\n";
  out << "    <text x=\"" << detail::px(margin_l + 98.0) << "\" y=\"" << detail::px(legend_y + 34.0)
      << "\">gateway</text>\n";
  out << "    <text class=\"caption\" x=\"" << detail::px(margin_l + content_w) << "\" y=\""
      << detail::px(legend_y + 34.0) << "\" text-anchor=\"end\">" << topo.nodes.size()
      << " nodes, " << solution.gateways.size() << " gateways, "
      << solution.connections.size() << " connections</text>\n";
  out << "  </g>\n";
  out << "</svg>\n";
}

inline void write_placement_svg(const Topology& topo, const VisibilityGraph& graph,
                                const PlacementSolution& solution, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  write_placement_svg(topo, graph, solution, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

// SF share histogram: one bar per SF with its percentage. An absent
// histogram (every node a gateway) renders the axes and a note.
inline void write_sf_histogram_svg(const std::optional<std::array<double, kSfClassCount>>& hist,
                                   std::ostream& out) {
  const double width = 520.0, height = 320.0;
  const double margin_l = 60.0, margin_t = 30.0, margin_r = 20.0, margin_b = 50.0;
  const double plot_w = width - margin_l - margin_r;
  const double plot_h = height - margin_t - margin_b;
  const double baseline = margin_t + plot_h;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::px(width)
      << "\" height=\"" << detail::px(height) << "\" viewBox=\"0 0 " << detail::px(width) << ' '
      << detail::px(height) << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << detail::px(width) << "\" height=\""
      << detail::px(height) << "\" fill=\"#ffffff\"/>\n";

  out << "  <g class=\"gridlines\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666\">\n";
  for (int pct = 0; pct <= 100; pct += 25) {
    const double y = baseline - plot_h * pct / 100.0;
    out << "    <line x1=\"" << detail::px(margin_l) << "\" y1=\"" << detail::px(y) << "\" x2=\""
        << detail::px(margin_l + plot_w) << "\" y2=\"" << detail::px(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "    <text x=\"" << detail::px(margin_l - 8.0) << "\" y=\"" << detail::px(y + 4.0)
        << "\" text-anchor=\"end\">" << pct << "%</text>\n";
  }
  out << "  </g>\n";

  out << "  <g class=\"bars\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  const double slot = plot_w / kSfClassCount;
  const double bar_w = slot * 0.62;
  for (int cls = 0; cls < kSfClassCount; ++cls) {
    const double fraction = hist ? (*hist)[cls] : 0.0;
    const double bar_h = plot_h * fraction;
    const double x = margin_l + slot * cls + (slot - bar_w) / 2.0;
    out << "    <rect class=\"bar sf" << (SpreadingFactor::kMin + cls) << "\" x=\""
        << detail::px(x) << "\" y=\"" << detail::px(baseline - bar_h) << "\" width=\""
        << detail::px(bar_w) << "\" height=\"" << detail::px(bar_h) << "\" fill=\""
        << kSfPalette[cls] << "\"/>\n";
    if (hist)
      out << "    <text x=\"" << detail::px(x + bar_w / 2.0) << "\" y=\""
          << detail::px(baseline - bar_h - 5.0) << "\" text-anchor=\"middle\">"
          << format_double(fraction * 100.0, 3) << "%</text>\n";
    out << "    <text x=\"" << detail::px(x + bar_w / 2.0) << "\" y=\""
        << detail::px(baseline + 18.0) << "\" text-anchor=\"middle\">SF"
        << (SpreadingFactor::kMin + cls) << "</text>\n";
  }
  out << "  </g>\n";

  out << "  <line class=\"axis\" x1=\"" << detail::px(margin_l) << "\" y1=\""
      << detail::px(baseline) << "\" x2=\"" << detail::px(margin_l + plot_w) << "\" y2=\""
      << detail::px(baseline) << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  if (!hist)
    out << "  <text x=\"" << detail::px(margin_l + plot_w / 2.0) << "\" y=\""
        << detail::px(margin_t + plot_h / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#666\">"
        << "no stations to chart</text>\n";
  out << "</svg>\n";
}

inline void write_sf_histogram_svg(const std::optional<std::array<double, kSfClassCount>>& hist,
                                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  write_sf_histogram_svg(hist, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace gwplan
