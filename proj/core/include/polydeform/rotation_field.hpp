#pragma once

#include <vector>

#include "polydeform/labeling.hpp"

namespace polydeform {

/// Squared-cross-product tolerance under which two unit vectors count as
/// parallel or antiparallel.
inline constexpr double kParallelEps = 1e-12;

/// Unit-norm tolerance for rotation_between inputs.
inline constexpr double kUnitNormTolerance = 1e-9;

/// Minimal rotation carrying unit vector `from` onto unit vector `to`
/// (Rodrigues). Exactly the identity in the parallel branch. Antiparallel
/// inputs rotate 180 degrees about the deterministic axis obtained by
/// projecting e_k off `from`, k = index of the smallest |from_k| (ties to the
/// smaller index). Throws InvalidArgumentError when an input norm deviates
/// from 1 by more than kUnitNormTolerance.
Eigen::Matrix3d rotation_between(const Vec3& from, const Vec3& to);

/// Per-face rotations taking sign-resolved face normals onto label targets.
struct RotationField {
  std::vector<Eigen::Matrix3d> rotations;
  std::vector<Vec3> reference_normals;  // sign-resolved unit normals
  std::vector<signed char> signs;       // reference = sign * winding normal
};

/// Computes the field from face normals under `positions`. Sign resolution:
/// without `previous`, each face picks the sign making dot(normal, target)
/// >= 0; with `previous`, the sign making dot(normal, previous reference
/// normal) >= 0 — this keeps references continuous across iterations on
/// meshes whose windings cannot be globally reconciled.
RotationField compute_rotation_field(const SurfaceMesh& mesh, const Positions& positions,
                                     const FaceLabeling& labels,
                                     const RotationField* previous = nullptr);
RotationField compute_rotation_field(const SurfaceMesh& mesh, const FaceLabeling& labels,
                                     const RotationField* previous = nullptr);

struct AlignmentError {
  double max_angle = 0.0;   // radians
  double mean_angle = 0.0;  // area-weighted
};

/// Angles between sign-resolved reference normals and their targets.
AlignmentError alignment_error(const SurfaceMesh& mesh, const Positions& positions,
                               const FaceLabeling& labels, const RotationField& field);
AlignmentError alignment_error(const SurfaceMesh& mesh, const FaceLabeling& labels);

}  // namespace polydeform
