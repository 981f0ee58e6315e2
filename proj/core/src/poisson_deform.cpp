#include "polydeform/poisson_deform.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace polydeform {

namespace {

double degenerate_threshold_for(const Positions& positions) {
  const double diag = bounding_box_diagonal(positions);
  return kDegenerateAreaFactor * diag * diag;
}

// Clamped cotangent per half-edge; one face_geometry evaluation per face.
std::vector<double> halfedge_cots(const SurfaceMesh& mesh, const Positions& weight_positions) {
  const double threshold = degenerate_threshold_for(weight_positions);
  std::vector<double> cots(mesh.halfedge_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    const FaceGeometry g = face_geometry(mesh, f, weight_positions, threshold);
    for (int k = 0; k < 3; ++k) {
      const double angle = g.corner_angles[(k + 2) % 3];
      cots[3 * f + k] = std::clamp(std::cos(angle) / std::sin(angle), -kCotClamp, kCotClamp);
    }
  }
  return cots;
}

Eigen::SparseMatrix<double> laplacian_from_cots(const SurfaceMesh& mesh,
                                                const std::vector<double>& cots) {
  const int nv = mesh.vertex_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh.halfedge_count()) * 4);
  for (int h = 0; h < mesh.halfedge_count(); ++h) {
    const int v = mesh.halfedge_tail(h);
    const int w = mesh.halfedge_head(h);
    const double c = cots[h];
    triplets.emplace_back(v, v, c);
    triplets.emplace_back(w, w, c);
    triplets.emplace_back(v, w, -c);
    triplets.emplace_back(w, v, -c);
  }
  Eigen::SparseMatrix<double> L(nv, nv);
  L.setFromTriplets(triplets.begin(), triplets.end());
  L.makeCompressed();
  return L;
}

Positions rhs_from_cots(const SurfaceMesh& mesh, const std::vector<double>& cots,
                        const Positions& edge_positions, const RotationField& field) {
  Positions b = Positions::Zero(mesh.vertex_count(), 3);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Eigen::Matrix3d& R = field.rotations[f];
    for (int k = 0; k < 3; ++k) {
      const int h = 3 * f + k;
      const int v = mesh.halfedge_tail(h);
      const int w = mesh.halfedge_head(h);
      const Vec3 rotated =
          cots[h] * (R * (edge_positions.row(v) - edge_positions.row(w)).transpose());
      b.row(v) += rotated;
      b.row(w) -= rotated;
    }
  }
  return b;
}

// Area-weighted centroid per component; falls back to the unweighted vertex
// mean when a component's total area vanishes.
std::vector<Vec3> component_centroids(const SurfaceMesh& mesh, const Positions& positions) {
  const int nc = mesh.component_count();
  std::vector<Vec3> weighted(nc, Vec3::Zero());
  std::vector<double> areas(nc, 0.0);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Vec3 a = positions.row(mesh.faces()(f, 0));
    const Vec3 b = positions.row(mesh.faces()(f, 1));
    const Vec3 c = positions.row(mesh.faces()(f, 2));
    const double area = 0.5 * (b - a).cross(c - a).norm();
    const int comp = mesh.component_of_face(f);
    weighted[comp] += area * (a + b + c) / 3.0;
    areas[comp] += area;
  }
  std::vector<Vec3> fallback(nc, Vec3::Zero());
  std::vector<int> counts(nc, 0);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const int comp = mesh.component_of_vertex(v);
    fallback[comp] += positions.row(v);
    ++counts[comp];
  }
  std::vector<Vec3> centroids(nc);
  for (int comp = 0; comp < nc; ++comp)
    centroids[comp] = areas[comp] > 0.0 ? Vec3(weighted[comp] / areas[comp])
                                        : Vec3(fallback[comp] / counts[comp]);
  return centroids;
}

// Best-fit rotation (cot-weighted, determinant-corrected) taking a face's
// original edge vectors onto its current ones. For planar point sets this maps
// the original normal exactly onto the current normal, so composing it with
// the normal-aligning rotation yields a field that carries original edges to
// target-aligned orientations while keeping their original lengths: the
// right-hand side then re-targets pristine edge lengths every iteration
// instead of inheriting whatever distortion earlier solves introduced.
Eigen::Matrix3d edge_transport(const SurfaceMesh& mesh, int face,
                               const std::vector<double>& original_cots,
                               const Positions& original, const Positions& current) {
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  for (int k = 0; k < 3; ++k) {
    const int h = 3 * face + k;
    const int v = mesh.halfedge_tail(h);
    const int w = mesh.halfedge_head(h);
    const Vec3 src = original.row(v) - original.row(w);
    const Vec3 dst = current.row(v) - current.row(w);
    covariance += original_cots[h] * src * dst.transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(covariance,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d rotation = svd.matrixV() * svd.matrixU().transpose();
  if (rotation.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    rotation = svd.matrixV() * flip * svd.matrixU().transpose();
  }
  return rotation;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_laplacian(const SurfaceMesh& mesh,
                                               const Positions& weight_positions) {
  return laplacian_from_cots(mesh, halfedge_cots(mesh, weight_positions));
}

Eigen::SparseMatrix<double> assemble_laplacian(const SurfaceMesh& mesh) {
  return assemble_laplacian(mesh, mesh.vertices());
}

Positions assemble_rhs(const SurfaceMesh& mesh, const Positions& weight_positions,
                       const Positions& edge_positions, const RotationField& field) {
  if (static_cast<int>(field.rotations.size()) != mesh.face_count())
    throw MismatchError("rotation field sized for a different mesh");
  return rhs_from_cots(mesh, halfedge_cots(mesh, weight_positions), edge_positions, field);
}

std::vector<Anchor> gauge_anchors(const SurfaceMesh& mesh) {
  std::vector<Anchor> anchors;
  anchors.reserve(mesh.component_anchors().size());
  for (const int v : mesh.component_anchors())
    anchors.push_back({v, mesh.vertices().row(v)});
  return anchors;
}

PoissonSystem build_poisson_system(const SurfaceMesh& mesh, const Positions& weight_positions,
                                   const Positions& edge_positions, const RotationField& field) {
  const auto cots = halfedge_cots(mesh, weight_positions);
  return {laplacian_from_cots(mesh, cots),
          rhs_from_cots(mesh, cots, edge_positions, field), gauge_anchors(mesh)};
}

PoissonSolution solve_poisson(const PoissonSystem& system, const SurfaceMesh& mesh,
                              double solver_tolerance) {
  const int nv = mesh.vertex_count();
  if (system.laplacian.rows() != nv || system.rhs.rows() != nv)
    throw MismatchError("poisson system sized for a different mesh");
  if (system.anchors.empty()) throw InvalidArgumentError("poisson system has no anchors");

  std::vector<char> is_anchor(nv, 0);
  for (const Anchor& a : system.anchors) is_anchor[a.vertex] = 1;

  // Row/column substitution: move anchored columns to the right-hand side,
  // then pin each anchor row to the identity.
  Positions b = system.rhs;
  for (const Anchor& a : system.anchors) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.laplacian, a.vertex); it; ++it) {
      if (is_anchor[it.row()]) continue;
      b.row(it.row()) -= it.value() * a.position.transpose();
    }
  }
  for (const Anchor& a : system.anchors) b.row(a.vertex) = a.position;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(system.laplacian.nonZeros()) + system.anchors.size());
  for (int col = 0; col < nv; ++col) {
    if (is_anchor[col]) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.laplacian, col); it; ++it) {
      if (is_anchor[it.row()]) continue;
      triplets.emplace_back(it.row(), col, it.value());
    }
  }
  for (const Anchor& a : system.anchors) triplets.emplace_back(a.vertex, a.vertex, 1.0);
  Eigen::SparseMatrix<double> A(nv, nv);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(A);
  if (factor.info() != Eigen::Success)
    throw SolverError("sparse factorization failed", std::numeric_limits<double>::infinity());
  Positions x = factor.solve(b);
  if (factor.info() != Eigen::Success)
    throw SolverError("sparse solve failed", std::numeric_limits<double>::infinity());

  // Iterative refinement recovers accuracy lost to ill-conditioning (clamped
  // cotangents on nearly degenerate faces push the condition number high
  // enough that a single factored solve misses the residual tolerance).
  const double b_norm = std::max(b.norm(), 1e-300);
  double residual = (A * x - b).norm() / b_norm;
  for (int pass = 0; pass < 3 && residual > solver_tolerance; ++pass) {
    const Positions correction = factor.solve(Positions(b - A * x));
    if (factor.info() != Eigen::Success) break;
    const Positions refined = x + correction;
    const double refined_residual = (A * refined - b).norm() / b_norm;
    if (!(refined_residual < residual)) break;
    x = refined;
    residual = refined_residual;
  }
  if (!std::isfinite(residual) || residual > solver_tolerance)
    throw SolverError("solver residual " + std::to_string(residual) +
                          " exceeds tolerance " + std::to_string(solver_tolerance),
                      residual);

  // Gauge: match each component's area-weighted centroid to the input's.
  const std::vector<Vec3> target = component_centroids(mesh, mesh.vertices());
  const std::vector<Vec3> got = component_centroids(mesh, x);
  for (int v = 0; v < nv; ++v) {
    const int comp = mesh.component_of_vertex(v);
    x.row(v) += (target[comp] - got[comp]).transpose();
  }
  return {std::move(x), residual};
}

void DeformConfig::validate() const {
  if (max_iterations < 1) throw InvalidArgumentError("max_iterations must be >= 1");
  if (!(angle_tolerance > 0.0)) throw InvalidArgumentError("angle_tolerance must be positive");
  if (stall_tolerance && !(*stall_tolerance > 0.0))
    throw InvalidArgumentError("stall_tolerance must be positive");
  if (!(solver_tolerance > 0.0)) throw InvalidArgumentError("solver_tolerance must be positive");
}

const char* to_string(DeformStatus status) {
  switch (status) {
    case DeformStatus::converged_angle: return "converged_angle";
    case DeformStatus::converged_stall: return "converged_stall";
    default: return "max_iterations_reached";
  }
}

DeformResult deform(const SurfaceMesh& mesh, const FaceLabeling& labels,
                    const DeformConfig& config) {
  config.validate();
  if (static_cast<int>(labels.size()) != mesh.face_count())
    throw MismatchError("labeling has " + std::to_string(labels.size()) + " entries for " +
                        std::to_string(mesh.face_count()) + " faces");

  DeformTrace trace;
  trace.stall_tolerance =
      config.stall_tolerance.value_or(1e-9 * mesh.bbox_diagonal());

  Positions positions = mesh.vertices();
  std::optional<RotationField> previous;
  Eigen::SparseMatrix<double> frozen_laplacian;
  if (!config.refresh_weights) frozen_laplacian = assemble_laplacian(mesh);
  const std::vector<Anchor> anchors = gauge_anchors(mesh);
  const std::vector<double> original_cots = halfedge_cots(mesh, mesh.vertices());

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    IterationRecord record;
    record.iteration = iter;
    try {
      const RotationField field =
          compute_rotation_field(mesh, positions, labels, previous ? &*previous : nullptr);
      const AlignmentError align = alignment_error(mesh, positions, labels, field);
      record.max_alignment = align.max_angle;
      record.mean_alignment = align.mean_angle;
      if (previous)
        for (int f = 0; f < mesh.face_count(); ++f)
          record.sign_flips += field.signs[f] != previous->signs[f];

      RotationField targets = field;
      for (int f = 0; f < mesh.face_count(); ++f)
        targets.rotations[f] =
            field.rotations[f] * edge_transport(mesh, f, original_cots, mesh.vertices(), positions);

      const Positions& weight_positions = config.refresh_weights ? positions : mesh.vertices();
      PoissonSystem system;
      system.laplacian = config.refresh_weights ? assemble_laplacian(mesh, positions)
                                                : frozen_laplacian;
      system.rhs = assemble_rhs(mesh, weight_positions, mesh.vertices(), targets);
      system.anchors = anchors;
      const PoissonSolution solution =
          solve_poisson(system, mesh, config.solver_tolerance);
      record.solver_residual = solution.residual;
      record.max_displacement =
          (solution.positions - positions).rowwise().norm().maxCoeff();
      positions = solution.positions;
      previous = field;
    } catch (const DegenerateFaceError& e) {
      throw DeformError("iteration " + std::to_string(iter) + ": " + e.what(),
                        DeformError::Kind::degenerate_face, std::move(trace));
    } catch (const SolverError& e) {
      throw DeformError("iteration " + std::to_string(iter) + ": " + e.what(),
                        DeformError::Kind::solver, std::move(trace));
    }
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    trace.iterations.push_back(record);

    if (record.max_alignment < config.angle_tolerance) {
      trace.status = DeformStatus::converged_angle;
      break;
    }
    if (record.max_displacement < trace.stall_tolerance) {
      trace.status = DeformStatus::converged_stall;
      break;
    }
    trace.status = DeformStatus::max_iterations_reached;
  }

  if (config.flatten) {
    const ChartGraph graph = build_chart_graph(mesh, labels);
    FlattenResult flattened = flatten_charts(mesh, positions, graph);
    positions = std::move(flattened.positions);
    trace.flatten_conflicts = std::move(flattened.conflicts);
  }
  return {mesh.with_vertices(std::move(positions)), std::move(trace)};
}

FlattenResult flatten_charts(const SurfaceMesh& mesh, const Positions& positions,
                             const ChartGraph& graph) {
  if (static_cast<int>(graph.chart_of_face.size()) != mesh.face_count())
    throw MismatchError("chart graph built for a different mesh");

  // Chart plane = area-weighted mean of the axis coordinate over face
  // centroids; plain mean when the chart area vanishes.
  const int nc = graph.chart_count();
  std::vector<double> plane(nc, 0.0);
  for (int c = 0; c < nc; ++c) {
    const int dim = axis_dimension(graph.charts[c].label);
    double area_sum = 0.0;
    double weighted = 0.0;
    double unweighted = 0.0;
    for (const int f : graph.charts[c].faces) {
      const Vec3 a = positions.row(mesh.faces()(f, 0));
      const Vec3 b = positions.row(mesh.faces()(f, 1));
      const Vec3 d = positions.row(mesh.faces()(f, 2));
      const double area = 0.5 * (b - a).cross(d - a).norm();
      const double centroid = (a[dim] + b[dim] + d[dim]) / 3.0;
      weighted += area * centroid;
      area_sum += area;
      unweighted += centroid;
    }
    plane[c] = area_sum > 0.0 ? weighted / area_sum
                              : unweighted / static_cast<double>(graph.charts[c].faces.size());
  }

  // Incident charts per vertex (ascending by chart id).
  std::vector<std::vector<int>> vertex_charts(mesh.vertex_count());
  for (int c = 0; c < nc; ++c)
    for (const int f : graph.charts[c].faces)
      for (int k = 0; k < 3; ++k) {
        auto& list = vertex_charts[mesh.faces()(f, k)];
        if (list.empty() || list.back() != c) list.push_back(c);
      }

  FlattenResult result{positions, {}};
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto& charts = vertex_charts[v];
    for (size_t i = 0; i < charts.size(); ++i)
      for (size_t j = i + 1; j < charts.size(); ++j)
        if (axis_dimension(graph.charts[charts[i]].label) ==
            axis_dimension(graph.charts[charts[j]].label))
          result.conflicts.push_back({v, charts[i], charts[j]});
    // Ascending chart ids: on a same-axis conflict the later chart wins.
    for (const int c : charts)
      result.positions(v, axis_dimension(graph.charts[c].label)) = plane[c];
  }
  return result;
}

}  // namespace polydeform
