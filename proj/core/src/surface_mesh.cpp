#include "polydeform/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace polydeform {

namespace {

// Disjoint-set over vertex ids, path halving.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

}  // namespace

SurfaceMesh::SurfaceMesh(Positions vertices, Faces faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  const int nv = vertex_count();
  const int nf = face_count();
  if (nv < 3) throw TopologyError("mesh needs at least 3 vertices, got " + std::to_string(nv));
  if (nf < 1) throw TopologyError("mesh has zero faces");

  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      const int v = faces_(f, k);
      if (v < 0 || v >= nv)
        throw TopologyError("face " + std::to_string(f) + " references vertex " +
                            std::to_string(v) + " outside [0, " + std::to_string(nv) + ")");
    }
    if (faces_(f, 0) == faces_(f, 1) || faces_(f, 1) == faces_(f, 2) ||
        faces_(f, 0) == faces_(f, 2))
      throw TopologyError("face " + std::to_string(f) + " repeats a vertex");
  }

  bbox_diagonal_ = bounding_box_diagonal(vertices_);
  degenerate_threshold_ = kDegenerateAreaFactor * bbox_diagonal_ * bbox_diagonal_;
  for (int f = 0; f < nf; ++f) face_geometry(*this, f, vertices_, degenerate_threshold_);

  // Twin pairing over undirected edges, direction-agnostic so inconsistently
  // wound inputs still pair up.
  twins_.assign(3 * nf, -1);
  std::unordered_map<uint64_t, int> first_halfedge;
  first_halfedge.reserve(3 * nf);
  for (int h = 0; h < 3 * nf; ++h) {
    const uint64_t key = edge_key(halfedge_tail(h), halfedge_head(h));
    auto [it, inserted] = first_halfedge.try_emplace(key, h);
    if (inserted) continue;
    const int other = it->second;
    if (other < 0)
      throw TopologyError("non-manifold edge (" +
                          std::to_string(std::min(halfedge_tail(h), halfedge_head(h))) + ", " +
                          std::to_string(std::max(halfedge_tail(h), halfedge_head(h))) +
                          ") borders more than two faces");
    twins_[h] = other;
    twins_[other] = h;
    it->second = -1;  // a third occurrence is non-manifold
  }

  edge_halfedges_.reserve(first_halfedge.size());
  boundary_vertex_.assign(nv, 0);
  for (int h = 0; h < 3 * nf; ++h) {
    if (twins_[h] < 0 || h < twins_[h]) edge_halfedges_.push_back(h);
    if (twins_[h] < 0) {
      ++boundary_edge_count_;
      boundary_vertex_[halfedge_tail(h)] = 1;
      boundary_vertex_[halfedge_head(h)] = 1;
    }
  }

  UnionFind uf(nv);
  for (int f = 0; f < nf; ++f) {
    uf.unite(faces_(f, 0), faces_(f, 1));
    uf.unite(faces_(f, 1), faces_(f, 2));
  }
  component_of_vertex_.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    const int root = uf.find(v);
    if (component_of_vertex_[root] < 0) {
      component_of_vertex_[root] = static_cast<int>(component_anchors_.size());
      component_anchors_.push_back(root);  // roots are component minima by construction
    }
    component_of_vertex_[v] = component_of_vertex_[root];
  }
}

SurfaceMesh SurfaceMesh::with_vertices(Positions vertices) const {
  if (vertices.rows() != vertices_.rows())
    throw MismatchError("replacement positions have " + std::to_string(vertices.rows()) +
                        " rows, mesh has " + std::to_string(vertices_.rows()) + " vertices");
  SurfaceMesh out = *this;
  out.vertices_ = std::move(vertices);
  out.bbox_diagonal_ = bounding_box_diagonal(out.vertices_);
  out.degenerate_threshold_ = kDegenerateAreaFactor * out.bbox_diagonal_ * out.bbox_diagonal_;
  return out;
}

double bounding_box_diagonal(const Positions& positions) {
  if (positions.rows() == 0) throw InvalidArgumentError("bounding box of an empty point set");
  const Vec3 lo = positions.colwise().minCoeff();
  const Vec3 hi = positions.colwise().maxCoeff();
  return (hi - lo).norm();
}

FaceGeometry face_geometry(const SurfaceMesh& mesh, int face,
                           const Positions& positions, double degenerate_threshold) {
  const auto& F = mesh.faces();
  const Vec3 a = positions.row(F(face, 0));
  const Vec3 b = positions.row(F(face, 1));
  const Vec3 c = positions.row(F(face, 2));
  const Vec3 cross = (b - a).cross(c - a);
  const double cross_norm = cross.norm();
  FaceGeometry g;
  g.area = 0.5 * cross_norm;
  if (g.area <= degenerate_threshold)
    throw DegenerateFaceError(face, g.area, degenerate_threshold);
  g.normal = cross / cross_norm;

  auto corner = [](const Vec3& at, const Vec3& p, const Vec3& q) {
    const Vec3 u = p - at;
    const Vec3 v = q - at;
    const double d = u.dot(v) / (u.norm() * v.norm());
    return std::acos(std::clamp(d, -1.0, 1.0));
  };
  g.corner_angles[0] = corner(a, b, c);
  g.corner_angles[1] = corner(b, c, a);
  g.corner_angles[2] = corner(c, a, b);
  return g;
}

FaceGeometry face_geometry(const SurfaceMesh& mesh, int face) {
  return face_geometry(mesh, face, mesh.vertices(), mesh.degenerate_area_threshold());
}

double cot_weight(const SurfaceMesh& mesh, int halfedge,
                  const Positions& positions, double degenerate_threshold) {
  const FaceGeometry g =
      face_geometry(mesh, SurfaceMesh::face_of(halfedge), positions, degenerate_threshold);
  const double angle = g.corner_angles[(halfedge % 3 + 2) % 3];
  const double cot = std::cos(angle) / std::sin(angle);
  return std::clamp(cot, -kCotClamp, kCotClamp);
}

double cot_weight(const SurfaceMesh& mesh, int halfedge) {
  return cot_weight(mesh, halfedge, mesh.vertices(), mesh.degenerate_area_threshold());
}

}  // namespace polydeform
