#pragma once

#include <Eigen/Sparse>

#include <optional>
#include <vector>

#include "polydeform/chart_graph.hpp"
#include "polydeform/rotation_field.hpp"

namespace polydeform {

struct Anchor {
  int vertex;
  Vec3 position;
};

/// Symmetric cotangent system for one deformation step. The coefficient of
/// edge {v,w} is the sum of the clamped cotangents of the two angles opposite
/// it; rows sum to zero, so the matrix is singular until anchored.
struct PoissonSystem {
  Eigen::SparseMatrix<double> laplacian;  // V x V
  Positions rhs;                          // V x 3
  std::vector<Anchor> anchors;
};

Eigen::SparseMatrix<double> assemble_laplacian(const SurfaceMesh& mesh,
                                               const Positions& weight_positions);
Eigen::SparseMatrix<double> assemble_laplacian(const SurfaceMesh& mesh);

/// b_v = sum over incident edges of [cot weights] * R(face) * (x_v - x_w),
/// with angles from `weight_positions` and edge vectors from `edge_positions`.
Positions assemble_rhs(const SurfaceMesh& mesh, const Positions& weight_positions,
                       const Positions& edge_positions, const RotationField& field);

/// Lowest vertex id of every connected component, pinned at its position in
/// the input mesh.
std::vector<Anchor> gauge_anchors(const SurfaceMesh& mesh);

PoissonSystem build_poisson_system(const SurfaceMesh& mesh, const Positions& weight_positions,
                                   const Positions& edge_positions, const RotationField& field);

struct PoissonSolution {
  Positions positions;
  double residual = 0.0;  // relative, of the anchored system
};

/// Pins anchors by row/column substitution, factors (SimplicialLDLT), solves,
/// verifies the relative residual against `solver_tolerance` (throws
/// SolverError beyond it), then translates each connected component so its
/// area-weighted centroid matches the input mesh's.
PoissonSolution solve_poisson(const PoissonSystem& system, const SurfaceMesh& mesh,
                              double solver_tolerance);

struct DeformConfig {
  int max_iterations = 150;
  double angle_tolerance = 1e-4;          // radians, max alignment error
  std::optional<double> stall_tolerance;  // absolute; default 1e-9 * bbox diagonal
  double solver_tolerance = 1e-10;        // relative residual
  bool refresh_weights = true;            // recompute cotangents from current geometry
  bool flatten = false;                   // snap charts onto their planes afterwards

  void validate() const;
};

enum class DeformStatus { converged_angle, converged_stall, max_iterations_reached };
const char* to_string(DeformStatus status);

struct IterationRecord {
  int iteration = 0;  // 1-based
  double max_alignment = 0.0;
  double mean_alignment = 0.0;
  double max_displacement = 0.0;
  double solver_residual = 0.0;
  double wall_seconds = 0.0;
  int sign_flips = 0;  // reference-normal sign changes vs. previous iteration
};

/// Vertices whose incident charts write the same coordinate axis; flatten
/// applies chart-id order, so chart_b (the larger id) wins.
struct FlattenConflict {
  int vertex;
  int chart_a;
  int chart_b;
};

struct DeformTrace {
  std::vector<IterationRecord> iterations;
  DeformStatus status = DeformStatus::max_iterations_reached;
  double stall_tolerance = 0.0;  // resolved absolute value
  std::vector<FlattenConflict> flatten_conflicts;
};

/// Raised when an iteration fails (degenerate face or solver breakdown); the
/// trace covers everything completed before the failure.
struct DeformError : Error {
  enum class Kind { degenerate_face, solver };
  Kind kind;
  DeformTrace trace;
  DeformError(const std::string& what, Kind k, DeformTrace partial)
      : Error(what), kind(k), trace(std::move(partial)) {}
};

struct DeformResult {
  SurfaceMesh mesh;
  DeformTrace trace;
};

/// Iterative rotation-driven deformation. Each iteration recomputes the
/// rotation field from current normals (sign-continuous), rebuilds the system
/// (weights from current geometry unless refresh_weights is false, edge
/// vectors from the current iterate), solves, and records a trace entry.
/// Stops when the max alignment error drops below angle_tolerance, the max
/// vertex displacement drops below stall_tolerance, or max_iterations is hit.
DeformResult deform(const SurfaceMesh& mesh, const FaceLabeling& labels,
                    const DeformConfig& config = {});

struct FlattenResult {
  Positions positions;
  std::vector<FlattenConflict> conflicts;
};

/// Sets, per chart, the axis coordinate of all chart vertices to the chart's
/// area-weighted mean of that coordinate. Charts write in id order; a
/// valence-3 corner receives one X, one Y and one Z write and becomes an
/// exact polycube corner.
FlattenResult flatten_charts(const SurfaceMesh& mesh, const Positions& positions,
                             const ChartGraph& graph);

}  // namespace polydeform
