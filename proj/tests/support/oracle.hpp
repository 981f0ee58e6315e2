#pragma once

#include "polydeform/rotation_field.hpp"
#include "polydeform/surface_mesh.hpp"

namespace oracle {

/// Stretching energy evaluated straight from its definition: for every
/// half-edge (v,w) with opposite corner angle a in the ORIGINAL mesh,
/// cot(a) * || (x'_v - x'_w) - R_face (x_v - x_w) ||^2, summed over all
/// half-edges. Written independently of the library assembly so the two can
/// disagree.
double reference_energy(const polydeform::SurfaceMesh& mesh,
                        const polydeform::Positions& deformed,
                        const polydeform::RotationField& field);

/// Central finite differences of reference_energy at `deformed`.
polydeform::Positions energy_gradient_fd(const polydeform::SurfaceMesh& mesh,
                                         const polydeform::Positions& deformed,
                                         const polydeform::RotationField& field,
                                         double step);

}  // namespace oracle
