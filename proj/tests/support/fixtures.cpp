#include "fixtures.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace fixtures {
namespace {

using polydeform::axis_target;

constexpr double kPi = std::numbers::pi;

struct MeshBuilder {
  std::vector<Vec3> points;
  std::vector<std::array<int, 3>> tris;

  int add_point(const Vec3& p) {
    points.push_back(p);
    return static_cast<int>(points.size()) - 1;
  }
  void add_tri(int a, int b, int c) { tris.push_back({a, b, c}); }
  void add_quad(int p00, int p10, int p11, int p01) {
    add_tri(p00, p10, p11);
    add_tri(p00, p11, p01);
  }

  SurfaceMesh build() const {
    Positions P(points.size(), 3);
    for (size_t i = 0; i < points.size(); ++i) P.row(i) = points[i];
    Faces F(tris.size(), 3);
    for (size_t i = 0; i < tris.size(); ++i)
      F.row(i) << tris[i][0], tris[i][1], tris[i][2];
    return SurfaceMesh(std::move(P), std::move(F));
  }
};

// Outward-oriented parameterization of each cube side: P(u,v) = origin +
// u*du + v*dv on the integer lattice, du x dv pointing outward. Order
// matches AxisLabel: +X, -X, +Y, -Y, +Z, -Z.
struct CubeSide {
  std::array<int, 3> origin, du, dv;
};

constexpr CubeSide kCubeSides[6] = {
    {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},  // +X
    {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},  // -X
    {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},  // +Y
    {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}},  // -Y
    {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},  // +Z
    {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}},  // -Z
};

}  // namespace

SurfaceMesh cube(int n) {
  std::map<std::array<int, 3>, int> index;
  MeshBuilder builder;
  auto lattice_point = [&](const CubeSide& side, int u, int v) {
    std::array<int, 3> key;
    for (int d = 0; d < 3; ++d)
      key[d] = n * side.origin[d] + u * side.du[d] + v * side.dv[d];
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(builder.points.size()));
    if (fresh)
      builder.add_point(Vec3(double(key[0]) / n, double(key[1]) / n, double(key[2]) / n));
    return it->second;
  };
  for (const CubeSide& side : kCubeSides)
    for (int v = 0; v < n; ++v)
      for (int u = 0; u < n; ++u)
        builder.add_quad(lattice_point(side, u, v), lattice_point(side, u + 1, v),
                         lattice_point(side, u + 1, v + 1), lattice_point(side, u, v + 1));
  return builder.build();
}

std::pair<int, int> cube_cell_faces(int n, int side, int u, int v) {
  const int base = side * 2 * n * n + (v * n + u) * 2;
  return {base, base + 1};
}

LabeledMesh labeled_cube(int n) {
  SurfaceMesh mesh = cube(n);
  FaceLabeling labels(mesh.face_count());
  for (int f = 0; f < mesh.face_count(); ++f)
    labels[f] = static_cast<AxisLabel>(f / (2 * n * n));
  return {std::move(mesh), std::move(labels)};
}

LabeledMesh rotated_cube(int n, double angle_radians) {
  LabeledMesh base = labeled_cube(n);
  const Eigen::Matrix3d R = rotation_about_z(angle_radians);
  Positions rotated = base.mesh.vertices() * R.transpose();
  return {base.mesh.with_vertices(std::move(rotated)), std::move(base.labels)};
}

LabeledMesh sphere(int n_phi, int n_theta) {
  MeshBuilder builder;
  const int north = builder.add_point(Vec3(0, 0, 1));
  std::vector<std::vector<int>> rings(n_theta - 1);
  for (int i = 1; i < n_theta; ++i) {
    const double theta = kPi * i / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / n_phi;
      rings[i - 1].push_back(builder.add_point(Vec3(
          std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta))));
    }
  }
  const int south = builder.add_point(Vec3(0, 0, -1));
  for (int j = 0; j < n_phi; ++j) {
    const int jn = (j + 1) % n_phi;
    builder.add_tri(north, rings.front()[j], rings.front()[jn]);
  }
  for (int i = 0; i + 1 < n_theta - 1; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const int jn = (j + 1) % n_phi;
      builder.add_quad(rings[i][j], rings[i + 1][j], rings[i + 1][jn], rings[i][jn]);
    }
  for (int j = 0; j < n_phi; ++j) {
    const int jn = (j + 1) % n_phi;
    builder.add_tri(south, rings.back()[jn], rings.back()[j]);
  }
  SurfaceMesh mesh = builder.build();
  FaceLabeling labels = polydeform::nearest_axis_labels(mesh);
  return {std::move(mesh), std::move(labels)};
}

LabeledMesh torus_four_band(int n_phi, int n_psi) {
  const double major = 1.0;
  const double minor = 0.35;
  MeshBuilder builder;
  for (int i = 0; i < n_phi; ++i) {
    const double phi = 2.0 * kPi * i / n_phi;
    for (int j = 0; j < n_psi; ++j) {
      const double psi = 2.0 * kPi * j / n_psi;
      const double ring = major + minor * std::cos(psi);
      builder.add_point(
          Vec3(ring * std::cos(phi), ring * std::sin(phi), minor * std::sin(psi)));
    }
  }
  auto vid = [&](int i, int j) { return (i % n_phi) * n_psi + (j % n_psi); };
  FaceLabeling labels;
  const AxisLabel bands[4] = {AxisLabel::pos_x, AxisLabel::pos_z, AxisLabel::neg_x,
                              AxisLabel::neg_z};
  for (int i = 0; i < n_phi; ++i)
    for (int j = 0; j < n_psi; ++j) {
      builder.add_quad(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
      const double psi_center = 2.0 * kPi * (j + 0.5) / n_psi;
      const int band =
          static_cast<int>(std::floor(std::fmod(psi_center + kPi / 4, 2.0 * kPi) / (kPi / 2)));
      labels.push_back(bands[band]);
      labels.push_back(bands[band]);
    }
  return {builder.build(), std::move(labels)};
}

LabeledMesh open_cylinder(int n_phi, int n_rows) {
  MeshBuilder builder;
  for (int j = 0; j <= n_rows; ++j)
    for (int i = 0; i < n_phi; ++i) {
      const double phi = 2.0 * kPi * i / n_phi;
      builder.add_point(Vec3(std::cos(phi), std::sin(phi), 2.0 * j / n_rows));
    }
  auto vid = [&](int i, int j) { return j * n_phi + (i % n_phi); };
  for (int j = 0; j < n_rows; ++j)
    for (int i = 0; i < n_phi; ++i)
      builder.add_quad(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
  SurfaceMesh mesh = builder.build();
  FaceLabeling labels = polydeform::nearest_axis_labels(mesh);
  return {std::move(mesh), std::move(labels)};
}

LabeledMesh scrambled_sphere(int n_phi, int n_theta, unsigned seed) {
  LabeledMesh base = sphere(n_phi, n_theta);
  Faces faces = base.mesh.faces();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(0.4);
  for (int f = 0; f < faces.rows(); ++f)
    if (flip(rng)) std::swap(faces(f, 1), faces(f, 2));
  return {SurfaceMesh(base.mesh.vertices(), std::move(faces)), std::move(base.labels)};
}

LabeledMesh half_half_sphere(int n_phi, int n_theta) {
  LabeledMesh base = sphere(n_phi, n_theta);
  for (int f = 0; f < base.mesh.face_count(); ++f) {
    const auto& F = base.mesh.faces();
    const double cx = (base.mesh.vertices()(F(f, 0), 0) + base.mesh.vertices()(F(f, 1), 0) +
                       base.mesh.vertices()(F(f, 2), 0)) /
                      3.0;
    base.labels[f] = cx > 0.0 ? AxisLabel::pos_x : AxisLabel::neg_x;
  }
  return base;
}

LabeledMesh island_cube(int n) {
  LabeledMesh base = labeled_cube(n);
  const auto [f0, f1] = cube_cell_faces(n, 4, n / 2, n / 2);
  base.labels[f0] = base.labels[f1] = AxisLabel::pos_x;
  return base;
}

LabeledMesh split_top_cube(int n) {
  LabeledMesh base = labeled_cube(n);
  for (int v = 0; v < n; ++v)
    for (int u = n / 2; u < n; ++u) {
      const auto [f0, f1] = cube_cell_faces(n, 4, u, v);
      base.labels[f0] = base.labels[f1] = AxisLabel::neg_z;
    }
  return base;
}

LabeledMesh corner_patch_overfull() {
  // Three 2x2 sides of the unit cube around the corner (1,1,1), glued along
  // their shared creases, open elsewhere. Sides +Z, +X, +Y in that order.
  std::map<std::array<int, 3>, int> index;
  MeshBuilder builder;
  const CubeSide sides[3] = {kCubeSides[4], kCubeSides[0], kCubeSides[2]};
  auto lattice_point = [&](const CubeSide& side, int u, int v) {
    std::array<int, 3> key;
    for (int d = 0; d < 3; ++d)
      key[d] = 2 * side.origin[d] + u * side.du[d] + v * side.dv[d];
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(builder.points.size()));
    if (fresh) builder.add_point(Vec3(key[0] / 2.0, key[1] / 2.0, key[2] / 2.0));
    return it->second;
  };
  FaceLabeling labels;
  auto add_cell = [&](const CubeSide& side, int u, int v, AxisLabel label) {
    builder.add_quad(lattice_point(side, u, v), lattice_point(side, u + 1, v),
                     lattice_point(side, u + 1, v + 1), lattice_point(side, u, v + 1));
    labels.push_back(label);
    labels.push_back(label);
  };
  // +Z side: south row stays +Z, north row becomes a -X chart.
  add_cell(sides[0], 0, 0, AxisLabel::pos_z);
  add_cell(sides[0], 1, 0, AxisLabel::pos_z);
  add_cell(sides[0], 0, 1, AxisLabel::neg_x);
  add_cell(sides[0], 1, 1, AxisLabel::neg_x);
  // +X side (u indexes y, v indexes z): the cell at y,z in [1/2,1] joins +Y.
  add_cell(sides[1], 0, 0, AxisLabel::pos_x);
  add_cell(sides[1], 1, 0, AxisLabel::pos_x);
  add_cell(sides[1], 0, 1, AxisLabel::pos_x);
  add_cell(sides[1], 1, 1, AxisLabel::pos_y);
  // +Y side: uniform.
  for (int v = 0; v < 2; ++v)
    for (int u = 0; u < 2; ++u) add_cell(sides[2], u, v, AxisLabel::pos_y);
  return {builder.build(), std::move(labels)};
}

int corner_patch_overfull_vertex(const SurfaceMesh& mesh) {
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.vertices().row(v).isApprox(Eigen::RowVector3d(1.0, 0.5, 1.0))) return v;
  throw polydeform::InvalidArgumentError("not the corner-patch fixture");
}

LabeledMesh flatten_conflict_cube(int n) {
  LabeledMesh base = labeled_cube(n);
  for (const auto [u, v] : {std::pair{n / 2 - 1, n / 2 - 1}, std::pair{n / 2, n / 2}}) {
    const auto [f0, f1] = cube_cell_faces(n, 4, u, v);
    base.labels[f0] = base.labels[f1] = AxisLabel::pos_x;
  }
  return base;
}

SurfaceMesh equilateral_triangle() {
  Positions P(3, 3);
  P << 0, 0, 0, 1, 0, 0, 0.5, std::sqrt(3.0) / 2.0, 0;
  Faces F(1, 3);
  F << 0, 1, 2;
  return SurfaceMesh(std::move(P), std::move(F));
}

SurfaceMesh unit_square() {
  Positions P(4, 3);
  P << 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0;
  Faces F(2, 3);
  F << 0, 1, 2, 0, 2, 3;
  return SurfaceMesh(std::move(P), std::move(F));
}

SurfaceMesh two_triangles() {
  Positions P(6, 3);
  P << 0, 0, 0, 1, 0, 0, 0, 1, 0, 10, 0, 0, 11, 0, 0, 10, 1, 0;
  Faces F(2, 3);
  F << 0, 1, 2, 3, 4, 5;
  return SurfaceMesh(std::move(P), std::move(F));
}

LabeledMesh random_patch(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 5);
  const int nx = dim(rng);
  const int ny = dim(rng);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  for (int attempt = 0; attempt < 100; ++attempt) {
    MeshBuilder builder;
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        builder.add_point(Vec3(i + jitter(rng), j + jitter(rng), jitter(rng)));
    auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        builder.add_quad(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
    try {
      SurfaceMesh mesh = builder.build();
      std::uniform_int_distribution<int> axis(0, polydeform::kAxisLabelCount - 1);
      FaceLabeling labels(mesh.face_count());
      for (auto& label : labels) label = static_cast<AxisLabel>(axis(rng));
      return {std::move(mesh), std::move(labels)};
    } catch (const polydeform::DegenerateFaceError&) {
    }
  }
  throw polydeform::InvalidArgumentError("random patch kept rolling degenerate faces");
}

Positions random_displacement(const SurfaceMesh& mesh, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale * mesh.bbox_diagonal(),
                                           scale * mesh.bbox_diagonal());
  Positions out = mesh.vertices();
  for (int v = 0; v < out.rows(); ++v)
    for (int c = 0; c < 3; ++c) out(v, c) += d(rng);
  return out;
}

Eigen::Matrix3d rotation_about_z(double radians) {
  return Eigen::AngleAxisd(radians, Vec3::UnitZ()).toRotationMatrix();
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec3 axis;
  do {
    axis = Vec3(u(rng), u(rng), u(rng));
  } while (axis.norm() < 1e-3 || axis.norm() > 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  return Eigen::AngleAxisd(angle(rng), axis.normalized()).toRotationMatrix();
}

}  // namespace fixtures
