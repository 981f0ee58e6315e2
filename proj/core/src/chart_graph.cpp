#include "polydeform/chart_graph.hpp"

#include <algorithm>
#include <set>

namespace polydeform {

bool ChartGraph::adjacent(int a, int b) const {
  return std::binary_search(neighbors[a].begin(), neighbors[a].end(), b);
}

ChartGraph build_chart_graph(const SurfaceMesh& mesh, const FaceLabeling& labels) {
  if (static_cast<int>(labels.size()) != mesh.face_count())
    throw MismatchError("labeling has " + std::to_string(labels.size()) + " entries for " +
                        std::to_string(mesh.face_count()) + " faces");
  const int nf = mesh.face_count();

  ChartGraph graph;
  graph.chart_of_face.assign(nf, -1);
  std::vector<int> stack;
  for (int seed = 0; seed < nf; ++seed) {
    if (graph.chart_of_face[seed] >= 0) continue;
    const int chart_id = graph.chart_count();
    Chart chart;
    chart.label = labels[seed];
    graph.chart_of_face[seed] = chart_id;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      chart.faces.push_back(f);
      for (int k = 0; k < 3; ++k) {
        const int h = 3 * f + k;
        const int t = mesh.twin(h);
        if (t < 0) {
          chart.touches_mesh_boundary = true;
          continue;
        }
        const int g = SurfaceMesh::face_of(t);
        if (graph.chart_of_face[g] >= 0 || labels[g] != chart.label) continue;
        graph.chart_of_face[g] = chart_id;
        stack.push_back(g);
      }
    }
    std::sort(chart.faces.begin(), chart.faces.end());
    graph.charts.push_back(std::move(chart));
  }

  // Adjacency from interior edges crossing chart borders.
  std::vector<std::set<int>> adjacency(graph.chart_count());
  for (const int h : mesh.edge_halfedges()) {
    const int t = mesh.twin(h);
    if (t < 0) continue;
    const int a = graph.chart_of_face[SurfaceMesh::face_of(h)];
    const int b = graph.chart_of_face[SurfaceMesh::face_of(t)];
    if (a == b) continue;
    adjacency[a].insert(b);
    adjacency[b].insert(a);
  }
  graph.neighbors.resize(graph.chart_count());
  for (int c = 0; c < graph.chart_count(); ++c)
    graph.neighbors[c].assign(adjacency[c].begin(), adjacency[c].end());

  // Corners: incident chart sets per vertex.
  std::vector<std::set<int>> vertex_charts(mesh.vertex_count());
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k)
      vertex_charts[mesh.faces()(f, k)].insert(graph.chart_of_face[f]);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto& charts = vertex_charts[v];
    const bool boundary = mesh.is_boundary_vertex(v);
    if (charts.size() >= 3 || (boundary && charts.size() >= 2))
      graph.corners.push_back({v, {charts.begin(), charts.end()}, boundary});
  }
  return graph;
}

ValidityReport validate_topology(const ChartGraph& graph, bool strict) {
  ValidityReport report;
  report.strict = strict;
  for (int c = 0; c < graph.chart_count(); ++c) {
    if (graph.charts[c].touches_mesh_boundary && !strict) continue;
    if (graph.neighbors[c].size() < 4) report.undersized_charts.push_back(c);
  }
  for (int c = 0; c < graph.chart_count(); ++c)
    for (const int n : graph.neighbors[c])
      if (n > c && graph.charts[n].label == opposite(graph.charts[c].label))
        report.opposite_adjacent.emplace_back(c, n);
  for (const auto& corner : graph.corners)
    if (corner.charts.size() >= 4) report.overfull_corners.push_back(corner.vertex);
  return report;
}

}  // namespace polydeform
