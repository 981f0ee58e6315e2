#include "polydeform/metrics.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace polydeform {

namespace {

void require_same_connectivity(const SurfaceMesh& a, const SurfaceMesh& b) {
  if (a.vertex_count() != b.vertex_count() || a.face_count() != b.face_count() ||
      a.faces() != b.faces())
    throw MismatchError("meshes do not share connectivity");
}

// Optimal rotation mapping source edges onto target edges under the given
// weights (Kabsch with determinant correction).
Eigen::Matrix3d optimal_rotation(const Eigen::Matrix3d& cross_covariance) {
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross_covariance,
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d R = svd.matrixV() * svd.matrixU().transpose();
  if (R.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    R = svd.matrixV() * flip * svd.matrixU().transpose();
  }
  return R;
}

}  // namespace

EdgeAreaErrors edge_area_errors(const SurfaceMesh& original, const SurfaceMesh& deformed) {
  require_same_connectivity(original, deformed);
  EdgeAreaErrors errors;
  for (const int h : original.edge_halfedges()) {
    const int v = original.halfedge_tail(h);
    const int w = original.halfedge_head(h);
    const double before = (original.vertices().row(v) - original.vertices().row(w)).norm();
    const double after = (deformed.vertices().row(v) - deformed.vertices().row(w)).norm();
    errors.edge_error += std::abs(after - before) / before;
  }
  errors.edge_error /= static_cast<double>(original.edge_count());

  for (int f = 0; f < original.face_count(); ++f) {
    const double before = face_geometry(original, f).area;
    const auto& V = deformed.vertices();
    const Vec3 a = V.row(original.faces()(f, 0));
    const Vec3 b = V.row(original.faces()(f, 1));
    const Vec3 c = V.row(original.faces()(f, 2));
    const double after = 0.5 * (b - a).cross(c - a).norm();
    errors.area_error += std::abs(after - before) / before;
  }
  errors.area_error /= static_cast<double>(original.face_count());
  return errors;
}

double stretching_energy(const SurfaceMesh& source, const SurfaceMesh& target) {
  require_same_connectivity(source, target);
  const auto& F = source.faces();
  double energy = 0.0;
  for (int f = 0; f < source.face_count(); ++f) {
    const FaceGeometry g = face_geometry(source, f);
    double cots[3];
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
    Vec3 src[3];
    Vec3 dst[3];
    for (int k = 0; k < 3; ++k) {
      const int v = F(f, k);
      const int w = F(f, (k + 1) % 3);
      const double angle = g.corner_angles[(k + 2) % 3];
      cots[k] = std::clamp(std::cos(angle) / std::sin(angle), -kCotClamp, kCotClamp);
      src[k] = source.vertices().row(v) - source.vertices().row(w);
      dst[k] = target.vertices().row(v) - target.vertices().row(w);
      covariance += cots[k] * src[k] * dst[k].transpose();
    }
    const Eigen::Matrix3d R = optimal_rotation(covariance);
    for (int k = 0; k < 3; ++k) energy += cots[k] * (dst[k] - R * src[k]).squaredNorm();
  }
  return energy;
}

double symmetric_stretch(const SurfaceMesh& a, const SurfaceMesh& b) {
  return stretching_energy(a, b) + stretching_energy(b, a);
}

PlanarityStraightness planarity_and_straightness(const SurfaceMesh& deformed,
                                                 const ChartGraph& graph,
                                                 double normalization_diagonal) {
  if (static_cast<int>(graph.chart_of_face.size()) != deformed.face_count())
    throw MismatchError("chart graph built for a different mesh");
  if (!(normalization_diagonal > 0.0))
    throw InvalidArgumentError("normalization diagonal must be positive");

  PlanarityStraightness out;
  const auto& V = deformed.vertices();
  const auto& F = deformed.faces();

  out.chart_planarity.reserve(graph.chart_count());
  std::vector<int> chart_vertices;
  for (const Chart& chart : graph.charts) {
    chart_vertices.clear();
    for (const int f : chart.faces)
      for (int k = 0; k < 3; ++k) chart_vertices.push_back(F(f, k));
    std::sort(chart_vertices.begin(), chart_vertices.end());
    chart_vertices.erase(std::unique(chart_vertices.begin(), chart_vertices.end()),
                         chart_vertices.end());
    const int dim = axis_dimension(chart.label);
    // Accumulate relative to an anchor vertex so an exactly flat chart (all
    // coordinates bit-identical) reports exactly zero instead of rounding noise.
    const double anchor = V(chart_vertices.front(), dim);
    double mean = 0.0;
    for (const int v : chart_vertices) mean += V(v, dim) - anchor;
    mean /= static_cast<double>(chart_vertices.size());
    double sq = 0.0;
    for (const int v : chart_vertices) {
      const double d = (V(v, dim) - anchor) - mean;
      sq += d * d;
    }
    const double rms =
        std::sqrt(sq / static_cast<double>(chart_vertices.size())) / normalization_diagonal;
    out.chart_planarity.push_back(rms);
    out.max_planarity = std::max(out.max_planarity, rms);
  }

  int boundary_edges = 0;
  double angle_sum = 0.0;
  for (const int h : deformed.edge_halfedges()) {
    const int t = deformed.twin(h);
    if (t < 0) continue;  // mesh boundary, no chart crossing
    if (graph.chart_of_face[SurfaceMesh::face_of(h)] ==
        graph.chart_of_face[SurfaceMesh::face_of(t)])
      continue;
    const Vec3 d =
        (V.row(deformed.halfedge_head(h)) - V.row(deformed.halfedge_tail(h))).normalized();
    const double axis_cos = d.cwiseAbs().maxCoeff();
    const double angle = std::acos(std::clamp(axis_cos, -1.0, 1.0));
    out.max_straightness = std::max(out.max_straightness, angle);
    angle_sum += angle;
    ++boundary_edges;
  }
  if (boundary_edges > 0) out.mean_straightness = angle_sum / boundary_edges;
  return out;
}

QualityReport quality_report(const SurfaceMesh& original, const SurfaceMesh& deformed,
                             const FaceLabeling& labels) {
  require_same_connectivity(original, deformed);
  QualityReport q;
  const AlignmentError align = alignment_error(deformed, labels);
  q.alignment_max = align.max_angle;
  q.alignment_mean = align.mean_angle;

  const ChartGraph graph = build_chart_graph(original, labels);
  const PlanarityStraightness ps =
      planarity_and_straightness(deformed, graph, original.bbox_diagonal());
  q.planarity_max = ps.max_planarity;
  q.straightness_max = ps.max_straightness;
  q.straightness_mean = ps.mean_straightness;

  const EdgeAreaErrors errors = edge_area_errors(original, deformed);
  q.edge_error = errors.edge_error;
  q.area_error = errors.area_error;

  q.stretch_forward = stretching_energy(original, deformed);
  q.stretch_backward = stretching_energy(deformed, original);
  q.stretch_symmetric = q.stretch_forward + q.stretch_backward;
  return q;
}

}  // namespace polydeform
