#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "polydeform/chart_graph.hpp"
#include "polydeform/labeling.hpp"
#include "polydeform/mesh_io.hpp"
#include "polydeform/metrics.hpp"
#include "polydeform/poisson_deform.hpp"
#include "polydeform/report.hpp"
#include "polydeform/version.hpp"

namespace {

using namespace polydeform;

using Stages = std::vector<std::pair<std::string, double>>;

template <typename F>
auto timed(Stages& stages, const std::string& name, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  auto record = [&] {
    stages.emplace_back(name, std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count());
  };
  if constexpr (std::is_void_v<decltype(body())>) {
    body();
    record();
  } else {
    auto value = body();
    record();
    return value;
  }
}

struct ReportOptions {
  std::string path;
  bool no_timing = false;
};

void add_report_options(CLI::App* cmd, ReportOptions& options) {
  cmd->add_option("--report", options.path, "write a structured run report (JSON)");
  cmd->add_flag("--no-timing", options.no_timing,
                "omit wall-clock times; report bytes depend only on inputs");
}

void emit_report(const ReportOptions& options, report::RunReportData data) {
  if (options.path.empty()) return;
  data.include_timing = !options.no_timing;
  report::write(data, options.path);
}

std::string default_labels_path(const std::string& mesh_path) {
  const size_t dot = mesh_path.find_last_of('.');
  const size_t slash = mesh_path.find_last_of("/\\");
  const bool has_extension = dot != std::string::npos &&
                             (slash == std::string::npos || dot > slash);
  return (has_extension ? mesh_path.substr(0, dot) : mesh_path) + ".labels";
}

int cmd_label(const std::string& mesh_path, std::string out_path,
              const ReportOptions& report_options) {
  Stages stages;
  const SurfaceMesh mesh =
      timed(stages, "load_mesh", [&] { return load_mesh(mesh_path); });
  const FaceLabeling labels =
      timed(stages, "label", [&] { return nearest_axis_labels(mesh); });
  if (out_path.empty()) out_path = default_labels_path(mesh_path);
  timed(stages, "write", [&] { save_labels(labels, out_path); });
  std::cout << "wrote " << labels.size() << " labels to " << out_path << "\n";

  report::RunReportData data;
  data.command = "label";
  data.inputs = {{"mesh", mesh_path, report::digest_file(mesh_path)}};
  data.stage_seconds = std::move(stages);
  emit_report(report_options, std::move(data));
  return 0;
}

void print_validity(const ChartGraph& graph, const ValidityReport& validity) {
  std::cout << "condition (a) chart neighbor count: "
            << (validity.neighbor_count_ok() ? "pass" : "FAIL") << "\n";
  for (const int c : validity.undersized_charts)
    std::cout << "  chart " << c << " (" << axis_name(graph.charts[c].label) << ", "
              << graph.charts[c].faces.size() << " faces) has "
              << graph.neighbors[c].size() << " neighbor(s), needs 4\n";
  std::cout << "condition (b) opposite labels never adjacent: "
            << (validity.opposite_labels_ok() ? "pass" : "FAIL") << "\n";
  for (const auto& [a, b] : validity.opposite_adjacent)
    std::cout << "  chart " << a << " (" << axis_name(graph.charts[a].label)
              << ") touches chart " << b << " (" << axis_name(graph.charts[b].label)
              << ")\n";
  std::cout << "condition (c) corner valence: "
            << (validity.corner_valence_ok() ? "pass" : "FAIL") << "\n";
  for (const int v : validity.overfull_corners)
    for (const ChartCorner& corner : graph.corners)
      if (corner.vertex == v)
        std::cout << "  vertex " << v << " joins " << corner.charts.size()
                  << " charts, at most 3 allowed\n";
  std::cout << validity.conditions_passed() << "/3 conditions pass\n";
}

int cmd_validate(const std::string& mesh_path, const std::string& labels_path,
                 bool strict, const ReportOptions& report_options) {
  Stages stages;
  const SurfaceMesh mesh =
      timed(stages, "load_mesh", [&] { return load_mesh(mesh_path); });
  const FaceLabeling labels =
      timed(stages, "load_labels", [&] { return load_labels(labels_path, mesh); });
  const ChartGraph graph =
      timed(stages, "charts", [&] { return build_chart_graph(mesh, labels); });
  const ValidityReport validity =
      timed(stages, "validate", [&] { return validate_topology(graph, strict); });
  print_validity(graph, validity);

  report::RunReportData data;
  data.command = "validate";
  data.inputs = {{"mesh", mesh_path, report::digest_file(mesh_path)},
                 {"labels", labels_path, report::digest_file(labels_path)}};
  data.config = {{"strict", strict}};
  data.validity = &validity;
  data.charts = &graph;
  data.stage_seconds = std::move(stages);
  emit_report(report_options, std::move(data));
  return validity.valid() ? 0 : 1;
}

struct DeformFlags {
  int max_iter = DeformConfig{}.max_iterations;
  double tol_angle = DeformConfig{}.angle_tolerance;
  std::optional<double> tol_stall;
  double solver_tol = DeformConfig{}.solver_tolerance;
  bool freeze_weights = false;
  bool flatten = false;
};

int cmd_deform(const std::string& mesh_path, const std::string& labels_path,
               const std::string& out_path, const DeformFlags& flags,
               const ReportOptions& report_options) {
  Stages stages;
  const SurfaceMesh mesh =
      timed(stages, "load_mesh", [&] { return load_mesh(mesh_path); });
  const FaceLabeling labels =
      timed(stages, "load_labels", [&] { return load_labels(labels_path, mesh); });
  const ChartGraph graph = build_chart_graph(mesh, labels);
  const ValidityReport validity = validate_topology(graph);
  if (!validity.valid())
    std::cerr << "warning: labeling fails " << 3 - validity.conditions_passed()
              << " polycube topology condition(s); deforming anyway\n";

  DeformConfig config;
  config.max_iterations = flags.max_iter;
  config.angle_tolerance = flags.tol_angle;
  config.stall_tolerance = flags.tol_stall;
  config.solver_tolerance = flags.solver_tol;
  config.refresh_weights = !flags.freeze_weights;
  config.flatten = flags.flatten;
  config.validate();

  report::RunReportData data;
  data.command = "deform";
  data.inputs = {{"mesh", mesh_path, report::digest_file(mesh_path)},
                 {"labels", labels_path, report::digest_file(labels_path)}};
  data.config = {
      {"max_iterations", flags.max_iter},
      {"angle_tolerance", flags.tol_angle},
      {"stall_tolerance",
       flags.tol_stall ? report::ConfigValue(*flags.tol_stall) : report::ConfigValue("auto")},
      {"solver_tolerance", flags.solver_tol},
      {"refresh_weights", config.refresh_weights},
      {"flatten", flags.flatten}};
  data.validity = &validity;
  data.charts = &graph;

  DeformTrace partial;
  try {
    const DeformResult result =
        timed(stages, "deform", [&] { return deform(mesh, labels, config); });

    MeshFormat format;
    try {
      format = mesh_format_from_path(out_path);
    } catch (const ParseError&) {
      format = mesh_format_from_path(mesh_path);
    }
    timed(stages, "write", [&] { save_mesh(result.mesh, out_path, format); });

    std::optional<QualityReport> quality;
    try {
      quality = timed(stages, "metrics",
                      [&] { return quality_report(mesh, result.mesh, labels); });
    } catch (const Error& skipped) {
      std::cerr << "warning: quality metrics skipped: " << skipped.what() << "\n";
    }
    std::cout << "status: " << to_string(result.trace.status) << " after "
              << result.trace.iterations.size() << " iteration(s)\n"
              << "max alignment error: "
              << format_double(result.trace.iterations.back().max_alignment)
              << " rad\n"
              << "wrote " << out_path << "\n";

    data.trace = &result.trace;
    data.quality = quality ? &*quality : nullptr;
    data.stage_seconds = std::move(stages);
    emit_report(report_options, std::move(data));
    return result.trace.status == DeformStatus::max_iterations_reached ? 1 : 0;
  } catch (const DeformError& failure) {
    partial = failure.trace;
    data.trace = &partial;
    data.stage_seconds = std::move(stages);
    emit_report(report_options, std::move(data));
    std::cerr << "error: " << failure.what() << "\n";
    return failure.kind == DeformError::Kind::solver ? 4 : 3;
  }
}

int cmd_metrics(const std::string& original_path, const std::string& deformed_path,
                const std::string& labels_path, bool csv,
                const ReportOptions& report_options) {
  Stages stages;
  const SurfaceMesh original =
      timed(stages, "load_original", [&] { return load_mesh(original_path); });
  const SurfaceMesh deformed =
      timed(stages, "load_deformed", [&] { return load_mesh(deformed_path); });
  const FaceLabeling labels =
      timed(stages, "load_labels", [&] { return load_labels(labels_path, original); });
  const QualityReport quality = timed(
      stages, "metrics", [&] { return quality_report(original, deformed, labels); });

  if (csv) {
    std::cout << report::quality_csv_header()
              << report::quality_csv_row(deformed_path, quality);
  } else {
    const std::pair<const char*, double> rows[] = {
        {"alignment_max", quality.alignment_max},
        {"alignment_mean", quality.alignment_mean},
        {"planarity_max", quality.planarity_max},
        {"straightness_max", quality.straightness_max},
        {"straightness_mean", quality.straightness_mean},
        {"edge_error", quality.edge_error},
        {"area_error", quality.area_error},
        {"stretch_forward", quality.stretch_forward},
        {"stretch_backward", quality.stretch_backward},
        {"stretch_symmetric", quality.stretch_symmetric}};
    for (const auto& [key, value] : rows)
      std::cout << key << ": " << format_double(value) << "\n";
  }

  report::RunReportData data;
  data.command = "metrics";
  data.inputs = {{"original", original_path, report::digest_file(original_path)},
                 {"deformed", deformed_path, report::digest_file(deformed_path)},
                 {"labels", labels_path, report::digest_file(labels_path)}};
  data.config = {{"csv", csv}};
  data.quality = &quality;
  data.stage_seconds = std::move(stages);
  emit_report(report_options, std::move(data));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polycube deformation toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string mesh_path, labels_path, out_path;
  std::string original_path, deformed_path;
  bool strict = false;
  bool csv = false;
  DeformFlags flags;
  ReportOptions report_options;
  int exit_code = 0;

  CLI::App* label = app.add_subcommand("label", "write nearest-axis labels for a mesh");
  label->add_option("mesh", mesh_path, "input mesh (.obj/.off)")->required();
  label->add_option("-o,--output", out_path, "label sidecar path (default: <mesh>.labels)");
  add_report_options(label, report_options);
  label->callback([&] { exit_code = cmd_label(mesh_path, out_path, report_options); });

  CLI::App* validate =
      app.add_subcommand("validate", "check the polycube topology conditions");
  validate->add_option("mesh", mesh_path, "input mesh (.obj/.off)")->required();
  validate->add_option("labels", labels_path, "label sidecar")->required();
  validate->add_flag("--strict", strict, "apply the neighbor-count condition to boundary charts");
  add_report_options(validate, report_options);
  validate->callback(
      [&] { exit_code = cmd_validate(mesh_path, labels_path, strict, report_options); });

  CLI::App* deform = app.add_subcommand("deform", "deform a labeled mesh into a polycube");
  deform->add_option("mesh", mesh_path, "input mesh (.obj/.off)")->required();
  deform->add_option("labels", labels_path, "label sidecar")->required();
  deform->add_option("-o,--output", out_path, "deformed mesh path")->required();
  deform->add_option("--max-iter", flags.max_iter, "iteration cap");
  deform->add_option("--tol-angle", flags.tol_angle, "alignment tolerance, radians");
  deform->add_option("--tol-stall", flags.tol_stall,
                     "displacement stall tolerance (default: 1e-9 x bbox diagonal)");
  deform->add_option("--solver-tol", flags.solver_tol, "relative residual tolerance");
  deform->add_flag("--freeze-weights", flags.freeze_weights,
                   "keep the input mesh's cotangent weights in every iteration");
  deform->add_flag("--flatten", flags.flatten, "snap charts onto exact planes afterwards");
  add_report_options(deform, report_options);
  deform->callback([&] {
    exit_code = cmd_deform(mesh_path, labels_path, out_path, flags, report_options);
  });

  CLI::App* metrics =
      app.add_subcommand("metrics", "measure deformation quality and distortion");
  metrics->add_option("original", original_path, "original mesh")->required();
  metrics->add_option("deformed", deformed_path, "deformed mesh")->required();
  metrics->add_option("labels", labels_path, "label sidecar")->required();
  metrics->add_flag("--csv", csv, "emit one CSV row instead of key: value lines");
  add_report_options(metrics, report_options);
  metrics->callback([&] {
    exit_code = cmd_metrics(original_path, deformed_path, labels_path, csv, report_options);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const DegenerateFaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
