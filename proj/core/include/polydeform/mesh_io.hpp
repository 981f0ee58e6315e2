#pragma once

#include <string>

#include "polydeform/surface_mesh.hpp"

namespace polydeform {

enum class MeshFormat { obj, off };

/// Pick the format from the file extension (.obj / .off, case-insensitive).
MeshFormat mesh_format_from_path(const std::string& path);

/// Load a triangle mesh. OBJ subset: `v x y z`, `f i j k` (1-based, optional
/// /texture/normal suffixes ignored), `#` comments; other records are skipped.
/// OFF: header, `V F E` counts, vertex lines, 0-based face lines. Polygons
/// with more than three vertices are fan-triangulated as (0,i,i+1).
SurfaceMesh load_mesh(const std::string& path);
SurfaceMesh load_mesh(const std::string& path, MeshFormat format);

/// Write the mesh; coordinates use shortest round-trip decimal formatting, so
/// save followed by load reproduces positions bit-for-bit.
void save_mesh(const SurfaceMesh& mesh, const std::string& path);
void save_mesh(const SurfaceMesh& mesh, const std::string& path, MeshFormat format);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace polydeform
