#include "polydeform/report.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polydeform/errors.hpp"
#include "polydeform/labeling.hpp"
#include "polydeform/version.hpp"

namespace polydeform::report {
namespace {

using json = nlohmann::ordered_json;

// Shortest round-trip decimal form, so report bytes are stable across runs.
std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

json to_json(const ConfigValue& value) {
  return std::visit([](const auto& v) { return json(v); }, value);
}

json to_json(const ValidityReport& v) {
  json neighbors = json::array();
  for (int chart : v.undersized_charts) neighbors.push_back(chart);
  json opposite = json::array();
  for (auto [a, b] : v.opposite_adjacent) opposite.push_back(json::array({a, b}));
  json corners = json::array();
  for (int vertex : v.overfull_corners) corners.push_back(vertex);
  return json{
      {"valid", v.valid()},
      {"strict", v.strict},
      {"conditions_passed", v.conditions_passed()},
      {"neighbor_count", json{{"ok", v.neighbor_count_ok()}, {"undersized_charts", neighbors}}},
      {"opposite_labels", json{{"ok", v.opposite_labels_ok()}, {"adjacent_pairs", opposite}}},
      {"corner_valence", json{{"ok", v.corner_valence_ok()}, {"overfull_corners", corners}}},
  };
}

json to_json(const ChartGraph& graph) {
  json charts = json::array();
  for (std::size_t c = 0; c < graph.charts.size(); ++c) {
    const Chart& chart = graph.charts[c];
    json neighbors = json::array();
    for (int n : graph.neighbors[c]) neighbors.push_back(n);
    charts.push_back(json{
        {"label", axis_name(chart.label)},
        {"faces", chart.faces.size()},
        {"touches_mesh_boundary", chart.touches_mesh_boundary},
        {"neighbors", neighbors},
    });
  }
  json corners = json::array();
  for (const ChartCorner& corner : graph.corners) {
    json incident = json::array();
    for (int c : corner.charts) incident.push_back(c);
    corners.push_back(json{
        {"vertex", corner.vertex},
        {"charts", incident},
        {"on_mesh_boundary", corner.on_mesh_boundary},
    });
  }
  return json{
      {"count", graph.charts.size()},
      {"charts", charts},
      {"corners", corners},
  };
}

json to_json(const DeformTrace& trace) {
  json iterations = json::array();
  for (const IterationRecord& rec : trace.iterations) {
    iterations.push_back(json{
        {"iteration", rec.iteration},
        {"max_alignment", rec.max_alignment},
        {"mean_alignment", rec.mean_alignment},
        {"max_displacement", rec.max_displacement},
        {"solver_residual", rec.solver_residual},
        {"sign_flips", rec.sign_flips},
    });
  }
  json conflicts = json::array();
  for (const FlattenConflict& c : trace.flatten_conflicts) {
    conflicts.push_back(json{
        {"vertex", c.vertex},
        {"chart_a", c.chart_a},
        {"chart_b", c.chart_b},
    });
  }
  return json{
      {"status", to_string(trace.status)},
      {"iterations", trace.iterations.size()},
      {"stall_tolerance", trace.stall_tolerance},
      {"trace", iterations},
      {"flatten_conflicts", conflicts},
  };
}

json to_json(const QualityReport& q) {
  return json{
      {"alignment_max", q.alignment_max},
      {"alignment_mean", q.alignment_mean},
      {"planarity_max", q.planarity_max},
      {"straightness_max", q.straightness_max},
      {"straightness_mean", q.straightness_mean},
      {"edge_error", q.edge_error},
      {"area_error", q.area_error},
      {"stretch_forward", q.stretch_forward},
      {"stretch_backward", q.stretch_backward},
      {"stretch_symmetric", q.stretch_symmetric},
  };
}

}  // namespace

std::string digest_bytes(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[hash & 0xf];
    hash >>= 4;
  }
  buf[16] = '\0';
  return std::string("fnv1a64:") + buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open for digest: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return digest_bytes(buffer.str());
}

std::string render(const RunReportData& data) {
  json root;
  root["schema_version"] = kReportSchemaVersion;
  root["tool_version"] = kVersion;
  root["command"] = data.command;

  json inputs = json::object();
  for (const InputFile& input : data.inputs) {
    inputs[input.name] = json{{"path", input.path}, {"digest", input.digest}};
  }
  root["inputs"] = inputs;

  json config = json::object();
  for (const auto& [key, value] : data.config) config[key] = to_json(value);
  root["config"] = config;

  root["validity"] = data.validity ? to_json(*data.validity) : json(nullptr);
  root["charts"] = data.charts ? to_json(*data.charts) : json(nullptr);
  root["deform"] = data.trace ? to_json(*data.trace) : json(nullptr);
  root["quality"] = data.quality ? to_json(*data.quality) : json(nullptr);

  if (data.include_timing) {
    json stages = json::object();
    for (const auto& [name, seconds] : data.stage_seconds) stages[name] = seconds;
    json timing = json{{"stages", stages}};
    if (data.trace) {
      json per_iteration = json::array();
      for (const IterationRecord& rec : data.trace->iterations)
        per_iteration.push_back(rec.wall_seconds);
      timing["deform_iteration_seconds"] = per_iteration;
    }
    root["timing"] = timing;
  } else {
    root["timing"] = json(nullptr);
  }

  return root.dump(2) + "\n";
}

void write(const RunReportData& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write report: " + path);
  out << render(data);
  if (!out) throw ParseError("failed writing report: " + path);
}

std::string quality_csv_header() {
  return "name,alignment_max,alignment_mean,planarity_max,straightness_max,"
         "straightness_mean,edge_error,area_error,stretch_forward,"
         "stretch_backward,stretch_symmetric\n";
}

std::string quality_csv_row(const std::string& name, const QualityReport& q) {
  std::string row = name;
  for (double value : {q.alignment_max, q.alignment_mean, q.planarity_max,
                       q.straightness_max, q.straightness_mean, q.edge_error,
                       q.area_error, q.stretch_forward, q.stretch_backward,
                       q.stretch_symmetric}) {
    row += ',';
    row += format_double(value);
  }
  row += '\n';
  return row;
}

}  // namespace polydeform::report
