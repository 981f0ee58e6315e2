#pragma once

#include "polydeform/chart_graph.hpp"
#include "polydeform/rotation_field.hpp"

namespace polydeform {

struct EdgeAreaErrors {
  double edge_error = 0.0;  // mean |relative length change| over undirected edges
  double area_error = 0.0;  // mean |relative area change| over faces
};

/// Throws MismatchError unless both meshes share identical connectivity.
EdgeAreaErrors edge_area_errors(const SurfaceMesh& original, const SurfaceMesh& deformed);

/// Cotangent-weighted stretch of `target` relative to `source`:
/// sum over half-edges of cot(angle in source) * |e_target - R*(f) e_source|^2
/// with R*(f) the per-triangle optimal rotation (polar projection of the
/// cot-weighted cross-covariance, determinant corrected to +1).
double stretching_energy(const SurfaceMesh& source, const SurfaceMesh& target);

/// stretching_energy(a, b) + stretching_energy(b, a); symmetric by
/// construction, zero exactly for rigid motions.
double symmetric_stretch(const SurfaceMesh& a, const SurfaceMesh& b);

struct PlanarityStraightness {
  std::vector<double> chart_planarity;  // per chart, RMS / normalization
  double max_planarity = 0.0;
  double max_straightness = 0.0;   // radians
  double mean_straightness = 0.0;  // plain mean over chart-boundary edges
};

/// Planarity: per chart, RMS deviation of the chart's axis coordinate over
/// its vertices from the chart mean, divided by `normalization_diagonal`.
/// Straightness: angle of every interior chart-boundary edge to the nearest
/// signed axis (mesh-boundary edges carry no chart crossing and are skipped).
PlanarityStraightness planarity_and_straightness(const SurfaceMesh& deformed,
                                                 const ChartGraph& graph,
                                                 double normalization_diagonal);

struct QualityReport {
  double alignment_max = 0.0;
  double alignment_mean = 0.0;
  double planarity_max = 0.0;
  double straightness_max = 0.0;
  double straightness_mean = 0.0;
  double edge_error = 0.0;
  double area_error = 0.0;
  double stretch_forward = 0.0;
  double stretch_backward = 0.0;
  double stretch_symmetric = 0.0;
};

/// Full distortion/validity summary of `deformed` against `original` under
/// `labels`. Normalizations use the original mesh's bounding-box diagonal.
QualityReport quality_report(const SurfaceMesh& original, const SurfaceMesh& deformed,
                             const FaceLabeling& labels);

}  // namespace polydeform
