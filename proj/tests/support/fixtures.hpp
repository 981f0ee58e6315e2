#pragma once

#include <random>

#include "polydeform/labeling.hpp"
#include "polydeform/surface_mesh.hpp"

namespace fixtures {

using polydeform::AxisLabel;
using polydeform::FaceLabeling;
using polydeform::Faces;
using polydeform::Positions;
using polydeform::SurfaceMesh;
using polydeform::Vec3;

struct LabeledMesh {
  SurfaceMesh mesh;
  FaceLabeling labels;
};

/// [0,1]^3 cube surface; each of the six sides is an n x n grid of quads
/// (two triangles each), welded exactly along shared edges and corners.
/// Faces are ordered side-major in the order +X,-X,+Y,-Y,+Z,-Z.
SurfaceMesh cube(int n);
LabeledMesh labeled_cube(int n);

/// Face ids (two triangles) of grid cell (u, v) on one cube side.
/// side indexes the order above; u, v in [0, n).
std::pair<int, int> cube_cell_faces(int n, int side, int u, int v);

/// Cube rotated about Z, keeping the axis-aligned cube's labels.
LabeledMesh rotated_cube(int n, double angle_radians);

/// Unit sphere, n_phi x n_theta UV grid (phi offset half a cell so no face
/// normal ties two axes), nearest-axis labels.
LabeledMesh sphere(int n_phi, int n_theta);

/// Torus (major radius 1, minor 0.35) with the four-band labeling
/// +X, +Z, -X, -Z around the tube.
LabeledMesh torus_four_band(int n_phi, int n_psi);

/// Open cylinder (radius 1, height 2, no caps), nearest-axis labels.
LabeledMesh open_cylinder(int n_phi, int n_rows);

/// Sphere with a fixed-seed subset of face windings flipped; labels are
/// computed from the consistently wound mesh, so flipped faces carry normals
/// opposing their targets and exercise the sign resolution.
LabeledMesh scrambled_sphere(int n_phi, int n_theta, unsigned seed);

/// Sphere labeled +X on the x > 0 half and -X elsewhere: two adjacent
/// opposite-label charts, each with one neighbor.
LabeledMesh half_half_sphere(int n_phi, int n_theta);

/// Violation fixtures for the three topology conditions; each breaks exactly
/// its own condition.
/// (a) one grid cell inside the top side relabeled +X: an undersized island.
LabeledMesh island_cube(int n);
/// (b) top side split into a +Z west half and a -Z east half (n even).
LabeledMesh split_top_cube(int n);
/// (c) open three-side corner patch (2x2 grids) where four charts meet at
/// the midpoint of the +Z/+X crease; every chart touches the open boundary.
LabeledMesh corner_patch_overfull();
/// Vertex id of the overfull corner in corner_patch_overfull().
int corner_patch_overfull_vertex(const SurfaceMesh& mesh);

/// Two single-cell +X islands on the top side touching diagonally at one
/// vertex: a corner whose incident charts repeat an axis (flatten conflict).
LabeledMesh flatten_conflict_cube(int n);

SurfaceMesh equilateral_triangle();
/// Unit square split along the diagonal (0,0)-(1,1).
SurfaceMesh unit_square();
/// Two far-apart triangles (two connected components).
SurfaceMesh two_triangles();

/// Jittered grid patch (<= 50 faces) with uniform-random labels; retries
/// the jitter until every face clears the degeneracy threshold.
LabeledMesh random_patch(std::mt19937_64& rng);

/// Positions displaced per-coordinate by uniform(-scale, scale) * bbox diag.
Positions random_displacement(const SurfaceMesh& mesh, std::mt19937_64& rng, double scale);

Eigen::Matrix3d rotation_about_z(double radians);
Eigen::Matrix3d random_rotation(std::mt19937_64& rng);

}  // namespace fixtures
