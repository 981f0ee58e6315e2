#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polydeform/surface_mesh.hpp"

namespace polydeform {

/// The six signed coordinate axes a chart can be assigned to. The enumeration
/// order (+X, -X, +Y, -Y, +Z, -Z) is also the tie-break order for nearest-axis
/// assignment and the integer encoding accepted in label sidecar files.
enum class AxisLabel : int {
  pos_x = 0,
  neg_x = 1,
  pos_y = 2,
  neg_y = 3,
  pos_z = 4,
  neg_z = 5,
};

inline constexpr int kAxisLabelCount = 6;

Vec3 axis_target(AxisLabel label);
AxisLabel opposite(AxisLabel label);
/// 0 for +-X, 1 for +-Y, 2 for +-Z.
inline int axis_dimension(AxisLabel label) { return static_cast<int>(label) / 2; }
inline double axis_sign(AxisLabel label) { return static_cast<int>(label) % 2 == 0 ? 1.0 : -1.0; }
const char* axis_name(AxisLabel label);  // "+X", "-X", ...
std::optional<AxisLabel> parse_axis_token(const std::string& token);

/// One label per face, aligned with mesh face indices.
using FaceLabeling = std::vector<AxisLabel>;

/// Label whose target direction has the largest dot product with `direction`;
/// ties resolve to the first label in enumeration order.
AxisLabel nearest_axis_label(const Vec3& direction);

/// Per-face nearest-axis labels from face normals.
FaceLabeling nearest_axis_labels(const SurfaceMesh& mesh);

/// Sidecar format: one token per line (+X/-X/+Y/-Y/+Z/-Z or 0..5), `#`
/// comments and blank lines ignored, line i labels face i. Throws ParseError
/// on a bad token (with line number) and MismatchError when the label count
/// differs from the face count.
FaceLabeling load_labels(const std::string& path, const SurfaceMesh& mesh);
void save_labels(const FaceLabeling& labels, const std::string& path);

}  // namespace polydeform
