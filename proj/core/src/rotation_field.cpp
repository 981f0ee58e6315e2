#include "polydeform/rotation_field.hpp"

#include <cmath>

namespace polydeform {

Eigen::Matrix3d rotation_between(const Vec3& from, const Vec3& to) {
  if (std::abs(from.norm() - 1.0) > kUnitNormTolerance ||
      std::abs(to.norm() - 1.0) > kUnitNormTolerance)
    throw InvalidArgumentError("rotation_between expects unit vectors");

  const Vec3 cross = from.cross(to);
  const double cross_sq = cross.squaredNorm();
  const double dot = from.dot(to);
  if (cross_sq <= kParallelEps) {
    if (dot > 0.0) return Eigen::Matrix3d::Identity();
    // Antiparallel: 180 degrees about the coordinate axis least aligned with
    // `from`, projected into from's orthogonal plane.
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(from[i]) < std::abs(from[k])) k = i;
    const Vec3 ek = Vec3::Unit(k);
    const Vec3 axis = (ek - ek.dot(from) * from).normalized();
    return 2.0 * axis * axis.transpose() - Eigen::Matrix3d::Identity();
  }

  Eigen::Matrix3d skew;
  skew << 0.0, -cross.z(), cross.y(), cross.z(), 0.0, -cross.x(), -cross.y(), cross.x(), 0.0;
  return Eigen::Matrix3d::Identity() + skew + skew * skew * ((1.0 - dot) / cross_sq);
}

RotationField compute_rotation_field(const SurfaceMesh& mesh, const Positions& positions,
                                     const FaceLabeling& labels,
                                     const RotationField* previous) {
  if (static_cast<int>(labels.size()) != mesh.face_count())
    throw MismatchError("labeling has " + std::to_string(labels.size()) + " entries for " +
                        std::to_string(mesh.face_count()) + " faces");
  if (previous && static_cast<int>(previous->rotations.size()) != mesh.face_count())
    throw MismatchError("previous rotation field sized for a different mesh");

  const int nf = mesh.face_count();
  const double threshold =
      kDegenerateAreaFactor * std::pow(bounding_box_diagonal(positions), 2);
  RotationField field;
  field.rotations.resize(nf);
  field.reference_normals.resize(nf);
  field.signs.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const Vec3 normal = face_geometry(mesh, f, positions, threshold).normal;
    const Vec3 anchor = previous ? previous->reference_normals[f] : axis_target(labels[f]);
    const signed char sign = normal.dot(anchor) >= 0.0 ? 1 : -1;
    field.signs[f] = sign;
    field.reference_normals[f] = sign * normal;
    field.rotations[f] = rotation_between(field.reference_normals[f], axis_target(labels[f]));
  }
  return field;
}

RotationField compute_rotation_field(const SurfaceMesh& mesh, const FaceLabeling& labels,
                                     const RotationField* previous) {
  return compute_rotation_field(mesh, mesh.vertices(), labels, previous);
}

AlignmentError alignment_error(const SurfaceMesh& mesh, const Positions& positions,
                               const FaceLabeling& labels, const RotationField& field) {
  const double threshold =
      kDegenerateAreaFactor * std::pow(bounding_box_diagonal(positions), 2);
  AlignmentError err;
  double area_sum = 0.0;
  double weighted = 0.0;
  for (int f = 0; f < mesh.face_count(); ++f) {
    const double area = face_geometry(mesh, f, positions, threshold).area;
    const double cosine = field.reference_normals[f].dot(axis_target(labels[f]));
    const double angle = std::acos(std::clamp(cosine, -1.0, 1.0));
    err.max_angle = std::max(err.max_angle, angle);
    weighted += area * angle;
    area_sum += area;
  }
  err.mean_angle = weighted / area_sum;
  return err;
}

AlignmentError alignment_error(const SurfaceMesh& mesh, const FaceLabeling& labels) {
  const RotationField field = compute_rotation_field(mesh, labels);
  return alignment_error(mesh, mesh.vertices(), labels, field);
}

}  // namespace polydeform
