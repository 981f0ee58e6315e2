#include "polydeform/labeling.hpp"

#include <fstream>

namespace polydeform {

Vec3 axis_target(AxisLabel label) {
  Vec3 t = Vec3::Zero();
  t[axis_dimension(label)] = axis_sign(label);
  return t;
}

AxisLabel opposite(AxisLabel label) {
  const int i = static_cast<int>(label);
  return static_cast<AxisLabel>(i % 2 == 0 ? i + 1 : i - 1);
}

const char* axis_name(AxisLabel label) {
  static constexpr const char* names[kAxisLabelCount] = {"+X", "-X", "+Y", "-Y", "+Z", "-Z"};
  return names[static_cast<int>(label)];
}

std::optional<AxisLabel> parse_axis_token(const std::string& token) {
  for (int i = 0; i < kAxisLabelCount; ++i)
    if (token == axis_name(static_cast<AxisLabel>(i))) return static_cast<AxisLabel>(i);
  if (token.size() == 1 && token[0] >= '0' && token[0] <= '5')
    return static_cast<AxisLabel>(token[0] - '0');
  return std::nullopt;
}

AxisLabel nearest_axis_label(const Vec3& direction) {
  AxisLabel best = AxisLabel::pos_x;
  double best_dot = direction.dot(axis_target(best));
  for (int i = 1; i < kAxisLabelCount; ++i) {
    const auto label = static_cast<AxisLabel>(i);
    const double d = direction.dot(axis_target(label));
    if (d > best_dot) {
      best = label;
      best_dot = d;
    }
  }
  return best;
}

FaceLabeling nearest_axis_labels(const SurfaceMesh& mesh) {
  FaceLabeling labels(mesh.face_count());
  for (int f = 0; f < mesh.face_count(); ++f)
    labels[f] = nearest_axis_label(face_geometry(mesh, f).normal);
  return labels;
}

FaceLabeling load_labels(const std::string& path, const SurfaceMesh& mesh) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  FaceLabeling labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    const auto label = parse_axis_token(token);
    if (!label)
      throw ParseError(path + ":" + std::to_string(line_no) + ": bad label token '" + token +
                       "' (expected +X,-X,+Y,-Y,+Z,-Z or 0..5)");
    labels.push_back(*label);
  }
  if (static_cast<int>(labels.size()) != mesh.face_count())
    throw MismatchError(path + ": " + std::to_string(labels.size()) + " labels for " +
                        std::to_string(mesh.face_count()) + " faces");
  return labels;
}

void save_labels(const FaceLabeling& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot open file for writing");
  for (const AxisLabel label : labels) out << axis_name(label) << '\n';
  if (!out.flush()) throw Error(path + ": write failed");
}

}  // namespace polydeform
