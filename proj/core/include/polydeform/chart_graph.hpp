#pragma once

#include <utility>
#include <vector>

#include "polydeform/labeling.hpp"

namespace polydeform {

/// Maximal connected run of equally labeled faces.
struct Chart {
  AxisLabel label;
  std::vector<int> faces;  // ascending
  bool touches_mesh_boundary = false;
};

/// A mesh vertex where charts meet: every vertex with >= 3 incident charts,
/// plus mesh-boundary vertices where 2 charts meet (recorded for reporting,
/// never a valence violation on their own).
struct ChartCorner {
  int vertex;
  std::vector<int> charts;  // ascending chart ids
  bool on_mesh_boundary = false;
};

struct ChartGraph {
  std::vector<Chart> charts;
  std::vector<int> chart_of_face;
  std::vector<std::vector<int>> neighbors;  // per chart, ascending, no self edges
  std::vector<ChartCorner> corners;

  int chart_count() const { return static_cast<int>(charts.size()); }
  bool adjacent(int a, int b) const;
};

/// Flood-fills charts in face-index order (chart ids are deterministic),
/// derives chart adjacency from interior edges whose two faces belong to
/// different charts, and collects corners.
ChartGraph build_chart_graph(const SurfaceMesh& mesh, const FaceLabeling& labels);

/// Outcome of the polycube topology conditions:
///   (a) every chart that does not touch a mesh boundary has >= 4 neighbors
///       (with `strict`, boundary charts too),
///   (b) no two adjacent charts carry opposite labels,
///   (c) no corner has >= 4 incident charts.
struct ValidityReport {
  std::vector<int> undersized_charts;                  // (a) offenders
  std::vector<std::pair<int, int>> opposite_adjacent;  // (b) offending pairs
  std::vector<int> overfull_corners;                   // (c) offending vertices
  bool strict = false;

  bool neighbor_count_ok() const { return undersized_charts.empty(); }
  bool opposite_labels_ok() const { return opposite_adjacent.empty(); }
  bool corner_valence_ok() const { return overfull_corners.empty(); }
  bool valid() const {
    return neighbor_count_ok() && opposite_labels_ok() && corner_valence_ok();
  }
  int conditions_passed() const {
    return int(neighbor_count_ok()) + int(opposite_labels_ok()) + int(corner_valence_ok());
  }
};

ValidityReport validate_topology(const ChartGraph& graph, bool strict = false);

}  // namespace polydeform
