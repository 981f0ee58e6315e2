#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polydeform/chart_graph.hpp"
#include "polydeform/metrics.hpp"
#include "polydeform/poisson_deform.hpp"

namespace polydeform::report {

/// FNV-1a 64 content hash, rendered as "fnv1a64:<16 hex digits>".
std::string digest_bytes(std::string_view bytes);
std::string digest_file(const std::string& path);

struct InputFile {
  std::string name;  // role: "mesh", "labels", ...
  std::string path;
  std::string digest;
};

using ConfigValue = std::variant<bool, int, double, std::string>;

/// Everything a command wants serialized. Pointer members are optional
/// sections (null in the output when absent) and must outlive render/write.
/// Wall-clock values appear only under the top-level "timing" key, the one
/// non-deterministic section; with include_timing=false the report bytes are
/// a pure function of the inputs.
struct RunReportData {
  std::string command;
  std::vector<InputFile> inputs;
  std::vector<std::pair<std::string, ConfigValue>> config;
  const ValidityReport* validity = nullptr;
  const ChartGraph* charts = nullptr;
  const DeformTrace* trace = nullptr;
  const QualityReport* quality = nullptr;
  std::vector<std::pair<std::string, double>> stage_seconds;
  bool include_timing = true;
};

/// Deterministic JSON text (schema_version = kReportSchemaVersion).
std::string render(const RunReportData& data);
void write(const RunReportData& data, const std::string& path);

/// Flat CSV of a QualityReport; header + one row per model.
std::string quality_csv_header();
std::string quality_csv_row(const std::string& name, const QualityReport& quality);

}  // namespace polydeform::report
