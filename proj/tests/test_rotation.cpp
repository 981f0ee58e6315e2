#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "polydeform/rotation_field.hpp"

using namespace polydeform;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

}  // namespace

TEST_CASE("rotation_between on the reference cases") {
  const Eigen::Matrix3d identity = rotation_between(Vec3(0, 0, 1), Vec3(0, 0, 1));
  CHECK(identity == Eigen::Matrix3d::Identity());

  Eigen::Matrix3d quarter;
  quarter << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  CHECK((rotation_between(Vec3(0, 0, 1), Vec3(1, 0, 0)) - quarter).cwiseAbs().maxCoeff() <
        1e-12);

  const Eigen::Matrix3d half_turn = rotation_between(Vec3(0, 0, 1), Vec3(0, 0, -1));
  CHECK((half_turn - Vec3(1, -1, -1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("rotation_between rejects non-unit input") {
  CHECK_THROWS_AS(rotation_between(Vec3(0, 0, 2), Vec3(1, 0, 0)), InvalidArgumentError);
  CHECK_THROWS_AS(rotation_between(Vec3(0, 0, 1), Vec3(0.5, 0, 0)), InvalidArgumentError);
}

TEST_CASE("rotation_between properties over random unit pairs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 from = random_unit(rng);
    const Vec3 to = trial % 5 == 0 ? Vec3(-from) : random_unit(rng);
    const Eigen::Matrix3d R = rotation_between(from, to);
    CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((R * from - to).norm() < 1e-10);
  }
}

TEST_CASE("axis-aligned cube yields identity rotations") {
  const auto [mesh, labels] = fixtures::labeled_cube(2);
  const RotationField field = compute_rotation_field(mesh, labels);
  for (int f = 0; f < mesh.face_count(); ++f) {
    CHECK(field.rotations[f] == Eigen::Matrix3d::Identity());
    CHECK(field.signs[f] == 1);
  }
}

TEST_CASE("rotated cube yields the inverse rigid rotation everywhere") {
  const double angle = std::acos(-1.0) / 2.0;
  const auto [mesh, labels] = fixtures::rotated_cube(2, angle);
  const RotationField field = compute_rotation_field(mesh, labels);
  const Eigen::Matrix3d inverse = fixtures::rotation_about_z(-angle);
  for (int f = 0; f < mesh.face_count(); ++f) {
    if (axis_dimension(labels[f]) == 2) {
      CHECK((field.rotations[f] - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    } else {
      CHECK((field.rotations[f] - inverse).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("field invariants: orthogonality and reference mapping") {
  const auto [mesh, labels] = fixtures::sphere(16, 8);
  const RotationField field = compute_rotation_field(mesh, labels);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Eigen::Matrix3d& R = field.rotations[f];
    CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((R * field.reference_normals[f] - axis_target(labels[f])).norm() < 1e-10);
  }
}

TEST_CASE("sphere cap rotations stay under a quarter turn") {
  const auto [mesh, labels] = fixtures::sphere(16, 8);
  const double quarter = std::acos(-1.0) / 2.0;
  for (int f = 0; f < mesh.face_count(); ++f) {
    if (labels[f] != AxisLabel::pos_z) continue;
    const FaceGeometry g = face_geometry(mesh, f);
    const double angle = std::acos(std::clamp(g.normal.dot(axis_target(labels[f])), -1.0, 1.0));
    CHECK(angle < quarter);
  }
}

TEST_CASE("alignment error of a slightly rotated cube") {
  const auto [mesh, labels] = fixtures::rotated_cube(2, 0.1);
  const AlignmentError err = alignment_error(mesh, labels);
  CHECK(err.max_angle == doctest::Approx(0.1).epsilon(1e-10));
  // area-weighted mean: four of six equal-area sides are off by 0.1
  CHECK(err.mean_angle == doctest::Approx(0.1 * 4.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("alignment error bounded by the nearest-axis cone on the sphere") {
  const auto [mesh, labels] = fixtures::sphere(32, 16);
  const AlignmentError err = alignment_error(mesh, labels);
  const double cone = std::acos(1.0 / std::sqrt(3.0));
  CHECK(err.max_angle <= cone + 1e-6);
  CHECK(err.max_angle > 0.8 * cone);
  CHECK(err.mean_angle > 0.0);
  CHECK(err.mean_angle < err.max_angle);
}

TEST_CASE("sign resolution on inconsistent windings") {
  const auto [mesh, labels] = fixtures::scrambled_sphere(16, 8, 17);
  const RotationField first = compute_rotation_field(mesh, labels);
  int flipped = 0;
  for (int f = 0; f < mesh.face_count(); ++f) {
    CHECK(first.reference_normals[f].dot(axis_target(labels[f])) >= 0.0);
    flipped += first.signs[f] == -1;
  }
  CHECK(flipped > 0);

  // idempotence: feeding the field back keeps every reference normal
  const RotationField second = compute_rotation_field(mesh, labels, &first);
  for (int f = 0; f < mesh.face_count(); ++f) {
    CHECK(second.signs[f] == first.signs[f]);
    CHECK(second.reference_normals[f] == first.reference_normals[f]);
  }
}

TEST_CASE("consistent aligned meshes need no sign flips") {
  const auto [mesh, labels] = fixtures::labeled_cube(2);
  const RotationField field = compute_rotation_field(mesh, labels);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const FaceGeometry g = face_geometry(mesh, f);
    CHECK(field.reference_normals[f] == g.normal);
  }
}
