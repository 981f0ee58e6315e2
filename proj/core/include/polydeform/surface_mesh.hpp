#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "polydeform/errors.hpp"

namespace polydeform {

using Vec3 = Eigen::Vector3d;
using Positions = Eigen::MatrixX3d;  // one row per vertex
using Faces = Eigen::MatrixX3i;      // one row per triangle

/// Relative factor defining the degenerate-area threshold:
/// a face is degenerate when area <= kDegenerateAreaFactor * bbox_diagonal^2.
inline constexpr double kDegenerateAreaFactor = 1e-12;

/// Cotangent weights are clamped into [-kCotClamp, kCotClamp].
inline constexpr double kCotClamp = 1e6;

/// Unit normal, area and corner angles of a single triangle.
struct FaceGeometry {
  Vec3 normal;
  double area = 0.0;
  std::array<double, 3> corner_angles{};  // angle at faces(f, k), radians
};

/// Indexed triangle mesh with half-edge adjacency.
///
/// Half-edge h = 3*f + k is the directed edge from faces(f,k) to
/// faces(f,(k+1)%3); the opposite corner is faces(f,(k+2)%3). Twins pair the
/// two half-edges of an interior undirected edge; orientation is treated
/// per-face, so twins may run in the same direction when the input windings
/// are inconsistent. Boundary half-edges have twin -1.
///
/// Construction validates indices, per-face vertex distinctness, edge
/// manifoldness (at most two faces per undirected edge) and rejects faces
/// whose area is at or below the degenerate threshold.
class SurfaceMesh {
 public:
  SurfaceMesh(Positions vertices, Faces faces);

  int vertex_count() const { return static_cast<int>(vertices_.rows()); }
  int face_count() const { return static_cast<int>(faces_.rows()); }
  int halfedge_count() const { return 3 * face_count(); }
  int edge_count() const { return static_cast<int>(edge_halfedges_.size()); }
  int boundary_edge_count() const { return boundary_edge_count_; }
  int component_count() const { return static_cast<int>(component_anchors_.size()); }

  const Positions& vertices() const { return vertices_; }
  const Faces& faces() const { return faces_; }

  int twin(int halfedge) const { return twins_[halfedge]; }
  bool is_boundary_halfedge(int halfedge) const { return twins_[halfedge] < 0; }
  static int face_of(int halfedge) { return halfedge / 3; }
  int halfedge_tail(int h) const { return faces_(h / 3, h % 3); }
  int halfedge_head(int h) const { return faces_(h / 3, (h % 3 + 1) % 3); }
  /// Vertex opposite the half-edge inside its own triangle.
  int halfedge_apex(int h) const { return faces_(h / 3, (h % 3 + 2) % 3); }

  /// One representative half-edge per undirected edge, ascending.
  const std::vector<int>& edge_halfedges() const { return edge_halfedges_; }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }

  int component_of_vertex(int v) const { return component_of_vertex_[v]; }
  int component_of_face(int f) const { return component_of_vertex_[faces_(f, 0)]; }
  /// Lowest vertex id of each connected component (isolated vertices included).
  const std::vector<int>& component_anchors() const { return component_anchors_; }

  double bbox_diagonal() const { return bbox_diagonal_; }
  double degenerate_area_threshold() const { return degenerate_threshold_; }

  /// Same connectivity with replaced vertex positions. Positions are taken
  /// verbatim; geometric validation is not re-run (deformed shapes may be
  /// arbitrarily close to degenerate).
  SurfaceMesh with_vertices(Positions vertices) const;

 private:
  SurfaceMesh() = default;

  Positions vertices_;
  Faces faces_;
  std::vector<int> twins_;
  std::vector<int> edge_halfedges_;
  std::vector<char> boundary_vertex_;
  std::vector<int> component_of_vertex_;
  std::vector<int> component_anchors_;
  int boundary_edge_count_ = 0;
  double bbox_diagonal_ = 0.0;
  double degenerate_threshold_ = 0.0;
};

/// Diagonal of the axis-aligned bounding box; 0 for a single point.
/// Throws InvalidArgumentError on an empty matrix.
double bounding_box_diagonal(const Positions& positions);

/// Geometry of one face under explicit positions. Throws DegenerateFaceError
/// when the area is at or below `degenerate_threshold`.
FaceGeometry face_geometry(const SurfaceMesh& mesh, int face,
                           const Positions& positions,
                           double degenerate_threshold);
FaceGeometry face_geometry(const SurfaceMesh& mesh, int face);

/// Cotangent of the angle opposite the half-edge, clamped into
/// [-kCotClamp, kCotClamp].
double cot_weight(const SurfaceMesh& mesh, int halfedge,
                  const Positions& positions, double degenerate_threshold);
double cot_weight(const SurfaceMesh& mesh, int halfedge);

}  // namespace polydeform
