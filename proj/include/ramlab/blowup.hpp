#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/localgeom.hpp"
#include "ramlab/multipoly.hpp"

namespace ramlab {

struct Chart {
  std::string name = "A2";
  RingPtr ring;
};

// One of the two standard charts of a point blowup. `images` expresses the
// parent coordinates in the child's: (a + x, b + x*y) for the x-chart and
// (a + x*y, b + y) for the y-chart; the new exceptional curve is x = 0,
// resp. y = 0.
struct ChildChart {
  Chart chart;
  std::vector<MultiPoly> images;
  MultiPoly exceptional;
};

struct BlowupNode {
  std::size_t id = 0;
  Chart parent;
  PlanarPoint center;
  std::array<ChildChart, 2> children;
  std::optional<std::size_t> parent_node;  // node whose exceptional curve carries the center
  int stage = 1;
  std::int64_t strict_mult = 0;  // multiplicity of the tracked strict transform at the center
  std::int64_t exc_mult = 0;     // multiplicity of the new exceptional curve in the total transform
};

struct ExceptionalComponent {
  std::size_t node = 0;
  MultiPoly equation;
  std::int64_t multiplicity = 0;
};

// A chart together with the tracked curve's data in it.
struct ChartCurve {
  Chart chart;
  MultiPoly strict;
  std::vector<ExceptionalComponent> exceptional;
  std::vector<MultiPoly> to_root;  // root coordinates as polynomials in this chart
  std::optional<std::size_t> created_by;
};

struct BlowupTree {
  Chart root;
  PlanarPoint center;
  MultiPoly curve;
  bool non_reduced = false;
  std::int64_t root_mult = 0;
  std::vector<BlowupNode> nodes;
  std::vector<ChartCurve> leaves;
  int stages = 0;
  std::int64_t M1 = 0;
};

struct CurveTransform {
  std::array<MultiPoly, 2> strict;
  std::int64_t exc_mult = 0;
};

BlowupNode blowup_point(const Chart& chart, const PlanarPoint& P, std::size_t id = 0);
CurveTransform transform_curve(const MultiPoly& f, const BlowupNode& node);
BlowupTree resolve_curve(const MultiPoly& f, const PlanarPoint& P);

// Images of the chart coordinates under an automorphism, as rational functions.
using ChartMap = std::vector<RationalFunction>;

struct TransportedAutomorphism {
  std::array<std::optional<ChartMap>, 2> maps;  // nullopt: not regular on that chart
};
// sigma-bar on each child chart. Throws NotFixingCenter, and NotRegularOnChart
// when neither chart admits the extension near its origin.
TransportedAutomorphism transport_automorphism(const ChartMap& sigma, const BlowupNode& node);
// sigma-bar on one child chart (0 = x-chart, 1 = y-chart); throws NotRegularOnChart.
ChartMap transport_automorphism(const ChartMap& sigma, const BlowupNode& node, std::size_t child);

// Singular points of a curve lying on the line var = 0 of its chart.
std::vector<PlanarPoint> singular_points_on_axis(const MultiPoly& f, std::size_t var);
bool is_singular_at(const MultiPoly& f, const PlanarPoint& P);

}  // namespace ramlab
