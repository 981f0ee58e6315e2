#include "polydeform/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace polydeform {

namespace {

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string tok;
  while (stream >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& tok, const std::string& path, int line) {
  double value = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    fail(path, line, "expected a number, got '" + tok + "'");
  return value;
}

long parse_int(const std::string& tok, const std::string& path, int line) {
  long value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    fail(path, line, "expected an integer, got '" + tok + "'");
  return value;
}

void append_fan(std::vector<std::array<int, 3>>& faces, const std::vector<int>& loop) {
  for (size_t i = 1; i + 1 < loop.size(); ++i)
    faces.push_back({loop[0], loop[i], loop[i + 1]});
}

SurfaceMesh build(std::vector<std::array<double, 3>>&& verts,
                  std::vector<std::array<int, 3>>&& tris,
                  const std::string& path) {
  if (tris.empty()) throw TopologyError(path + ": mesh has zero faces");
  Positions V(verts.size(), 3);
  for (size_t i = 0; i < verts.size(); ++i)
    V.row(static_cast<Eigen::Index>(i)) << verts[i][0], verts[i][1], verts[i][2];
  Faces F(tris.size(), 3);
  for (size_t i = 0; i < tris.size(); ++i)
    F.row(static_cast<Eigen::Index>(i)) << tris[i][0], tris[i][1], tris[i][2];
  return SurfaceMesh(std::move(V), std::move(F));
}

SurfaceMesh load_obj(std::istream& in, const std::string& path) {
  std::vector<std::array<double, 3>> verts;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) fail(path, line_no, "vertex line needs 3 coordinates");
      verts.push_back({parse_double(tokens[1], path, line_no),
                       parse_double(tokens[2], path, line_no),
                       parse_double(tokens[3], path, line_no)});
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) fail(path, line_no, "face line needs at least 3 indices");
      std::vector<int> loop;
      for (size_t t = 1; t < tokens.size(); ++t) {
        const std::string head = tokens[t].substr(0, tokens[t].find('/'));
        const long idx = parse_int(head, path, line_no);
        if (idx < 1 || idx > static_cast<long>(verts.size()))
          fail(path, line_no, "face index " + std::to_string(idx) + " out of range [1, " +
                                  std::to_string(verts.size()) + "]");
        loop.push_back(static_cast<int>(idx - 1));
      }
      append_fan(tris, loop);
    }
    // vn/vt/g/o/s/usemtl/mtllib and unknown records are ignored
  }
  return build(std::move(verts), std::move(tris), path);
}

SurfaceMesh load_off(std::istream& in, const std::string& path) {
  std::string line;
  int line_no = 0;
  auto next_tokens = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto tokens = split_ws(line);
      if (!tokens.empty()) return tokens;
    }
    fail(path, line_no, "unexpected end of file");
  };

  auto header = next_tokens();
  if (header.size() != 1 || header[0] != "OFF")
    fail(path, line_no, "expected OFF header");
  const auto counts = next_tokens();
  if (counts.size() < 3) fail(path, line_no, "expected 'vertices faces edges' counts");
  const long nv = parse_int(counts[0], path, line_no);
  const long nf = parse_int(counts[1], path, line_no);
  if (nv < 0 || nf < 0) fail(path, line_no, "negative count");

  std::vector<std::array<double, 3>> verts;
  verts.reserve(static_cast<size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    const auto tokens = next_tokens();
    if (tokens.size() < 3) fail(path, line_no, "vertex line needs 3 coordinates");
    verts.push_back({parse_double(tokens[0], path, line_no),
                     parse_double(tokens[1], path, line_no),
                     parse_double(tokens[2], path, line_no)});
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    const auto tokens = next_tokens();
    const long n = parse_int(tokens[0], path, line_no);
    if (n < 3) fail(path, line_no, "face needs at least 3 vertices");
    if (static_cast<long>(tokens.size()) < n + 1)
      fail(path, line_no, "face line shorter than its vertex count");
    std::vector<int> loop;
    for (long t = 1; t <= n; ++t) {
      const long idx = parse_int(tokens[static_cast<size_t>(t)], path, line_no);
      if (idx < 0 || idx >= nv)
        fail(path, line_no, "face index " + std::to_string(idx) + " out of range [0, " +
                                std::to_string(nv) + ")");
      loop.push_back(static_cast<int>(idx));
    }
    append_fan(tris, loop);
  }
  return build(std::move(verts), std::move(tris), path);
}

}  // namespace

MeshFormat mesh_format_from_path(const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == "obj") return MeshFormat::obj;
  if (ext == "off") return MeshFormat::off;
  throw ParseError(path + ": unknown mesh extension '" + ext + "' (expected .obj or .off)");
}

SurfaceMesh load_mesh(const std::string& path) {
  return load_mesh(path, mesh_format_from_path(path));
}

SurfaceMesh load_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return format == MeshFormat::obj ? load_obj(in, path) : load_off(in, path);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
  save_mesh(mesh, path, mesh_format_from_path(path));
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path, MeshFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot open file for writing");
  const auto& V = mesh.vertices();
  const auto& F = mesh.faces();
  if (format == MeshFormat::obj) {
    for (Eigen::Index v = 0; v < V.rows(); ++v)
      out << "v " << format_double(V(v, 0)) << ' ' << format_double(V(v, 1)) << ' '
          << format_double(V(v, 2)) << '\n';
    for (Eigen::Index f = 0; f < F.rows(); ++f)
      out << "f " << F(f, 0) + 1 << ' ' << F(f, 1) + 1 << ' ' << F(f, 2) + 1 << '\n';
  } else {
    out << "OFF\n" << V.rows() << ' ' << F.rows() << ' ' << mesh.edge_count() << '\n';
    for (Eigen::Index v = 0; v < V.rows(); ++v)
      out << format_double(V(v, 0)) << ' ' << format_double(V(v, 1)) << ' '
          << format_double(V(v, 2)) << '\n';
    for (Eigen::Index f = 0; f < F.rows(); ++f)
      out << "3 " << F(f, 0) << ' ' << F(f, 1) << ' ' << F(f, 2) << '\n';
  }
  if (!out.flush()) throw Error(path + ": write failed");
}

}  // namespace polydeform
