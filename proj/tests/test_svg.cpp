#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <optional>
#include <sstream>

#include "gwplan/graph.hpp"
#include "gwplan/svg.hpp"
#include "gwplan/topology.hpp"
#include "support/fixtures.hpp"
#include "support/xml_check.hpp"

using gwplan::PlacementSolution;
using gwplan::Topology;
using gwplan::VisibilityGraph;
using testsupport::count_tags;
using testsupport::make_graph;
using testsupport::parse_xml;

namespace {

Topology three_nodes() {
  Topology topo;
  topo.nodes = {{0, 100.0, 100.0}, {1, 400.0, 250.0}, {2, 900.0, 800.0}};
  topo.area_width = 1000.0;
  topo.area_height = 1000.0;
  return topo;
}

}  // namespace

TEST_CASE("placement map draws every node and connection") {
  const Topology topo = three_nodes();
  const VisibilityGraph g = make_graph(3, {{0, 1, 7}, {1, 2, 10}});
  PlacementSolution s;
  s.gateways = {1};
  s.connections = {{0, 1}, {2, 1}};

  std::ostringstream out;
  gwplan::write_placement_svg(topo, g, s, out);
  const auto tags = parse_xml(out.str());

  CHECK(count_tags(tags, "svg") == 1);
  CHECK(count_tags(tags, "line", "link") == 2);
  CHECK(count_tags(tags, "line", "sf7") == 1);
  CHECK(count_tags(tags, "line", "sf10") == 1);
  CHECK(count_tags(tags, "circle", "station") == 2);
  CHECK(count_tags(tags, "circle", "gateway") == 1);
  // Legend: six SF swatches plus the two marker keys.
  CHECK(count_tags(tags, "rect", "swatch") == 6);
  CHECK(count_tags(tags, "circle", "legend-station") == 1);
  CHECK(count_tags(tags, "circle", "legend-gateway") == 1);
  CHECK(out.str().find("3 nodes, 1 gateways, 2 connections") != std::string::npos);
}

TEST_CASE("map coordinates stay inside the viewBox") {
  const Topology topo = three_nodes();
  const VisibilityGraph g = make_graph(3, {{0, 1, 7}, {1, 2, 10}});
  PlacementSolution s;
  s.gateways = {1};
  s.connections = {{0, 1}, {2, 1}};
  std::ostringstream out;
  gwplan::write_placement_svg(topo, g, s, out);
  const auto tags = parse_xml(out.str());

  double view_w = 0.0, view_h = 0.0;
  for (const auto& tag : tags) {
    if (tag.name != "svg") continue;
    const auto it = tag.attrs.find("viewBox");
    REQUIRE(it != tag.attrs.end());
    std::istringstream box(it->second);
    double x0 = 0.0, y0 = 0.0;
    box >> x0 >> y0 >> view_w >> view_h;
    CHECK(x0 == 0.0);
    CHECK(y0 == 0.0);
  }
  REQUIRE(view_w > 0.0);
  REQUIRE(view_h > 0.0);
  for (const auto& tag : tags) {
    if (tag.name == "circle") {
      const double cx = std::stod(tag.attrs.at("cx"));
      const double cy = std::stod(tag.attrs.at("cy"));
      CHECK(cx >= 0.0);
      CHECK(cx <= view_w);
      CHECK(cy >= 0.0);
      CHECK(cy <= view_h);
    } else if (tag.name == "line") {
      for (const char* attr : {"x1", "x2"}) {
        const double x = std::stod(tag.attrs.at(attr));
        CHECK(x >= 0.0);
        CHECK(x <= view_w);
      }
      for (const char* attr : {"y1", "y2"}) {
        const double y = std::stod(tag.attrs.at(attr));
        CHECK(y >= 0.0);
        CHECK(y <= view_h);
      }
    }
  }
}

TEST_CASE("tall areas flip the page orientation") {
  Topology topo;
  topo.nodes = {{0, 10.0, 10.0}, {1, 20.0, 1900.0}};
  topo.area_width = 100.0;
  topo.area_height = 2000.0;
  VisibilityGraph g(2);
  PlacementSolution s;
  s.gateways = {0, 1};
  std::ostringstream out;
  gwplan::write_placement_svg(topo, g, s, out);
  const auto tags = parse_xml(out.str());
  CHECK(count_tags(tags, "circle", "gateway") == 2);
  CHECK(count_tags(tags, "line", "link") == 0);
}

TEST_CASE("an empty topology still renders a valid frame") {
  Topology topo;
  VisibilityGraph g(0);
  PlacementSolution s;
  std::ostringstream out;
  gwplan::write_placement_svg(topo, g, s, out);
  const auto tags = parse_xml(out.str());
  CHECK(count_tags(tags, "svg") == 1);
  CHECK(count_tags(tags, "rect", "frame") == 1);
  CHECK(count_tags(tags, "circle", "station") == 0);
}

TEST_CASE("a connection that is not an edge is refused") {
  const Topology topo = three_nodes();
  const VisibilityGraph g = make_graph(3, {{0, 1, 7}});
  PlacementSolution s;
  s.gateways = {1};
  s.connections = {{2, 1}};
  std::ostringstream out;
  CHECK_THROWS_AS(gwplan::write_placement_svg(topo, g, s, out), std::invalid_argument);
}

TEST_CASE("histogram chart scales six bars to their fractions") {
  std::array<double, gwplan::kSfClassCount> hist = {0.5, 0.25, 0.125, 0.125, 0.0, 0.0};
  std::ostringstream out;
  gwplan::write_sf_histogram_svg(hist, out);
  const auto tags = parse_xml(out.str());
  REQUIRE(count_tags(tags, "rect", "bar") == 6);

  // Bars scale linearly, so the SF7 bar is twice the SF8 bar.
  double h_sf7 = -1.0, h_sf8 = -1.0, h_sf11 = -1.0;
  for (const auto& tag : tags) {
    if (tag.name != "rect" || !testsupport::has_class_token(tag, "bar")) continue;
    if (testsupport::has_class_token(tag, "sf7")) h_sf7 = std::stod(tag.attrs.at("height"));
    if (testsupport::has_class_token(tag, "sf8")) h_sf8 = std::stod(tag.attrs.at("height"));
    if (testsupport::has_class_token(tag, "sf11")) h_sf11 = std::stod(tag.attrs.at("height"));
  }
  REQUIRE(h_sf7 > 0.0);
  CHECK(h_sf7 == Catch::Approx(2.0 * h_sf8));
  CHECK(h_sf11 == 0.0);
  // Bar labels, distinct from the 0/25/50/75/100 gridline marks.
  CHECK(out.str().find("12.5%") != std::string::npos);
  CHECK(out.str().find("SF7") != std::string::npos);
  CHECK(out.str().find("SF12") != std::string::npos);
}

TEST_CASE("histogram without stations says so") {
  std::ostringstream out;
  gwplan::write_sf_histogram_svg(std::nullopt, out);
  const auto tags = parse_xml(out.str());
  REQUIRE(count_tags(tags, "rect", "bar") == 6);
  for (const auto& tag : tags)
    if (tag.name == "rect" && testsupport::has_class_token(tag, "bar"))
      CHECK(std::stod(tag.attrs.at("height")) == 0.0);
  CHECK(out.str().find("no stations to chart") != std::string::npos);
}
