#pragma once

namespace polydeform {

inline constexpr const char* kVersion = "0.1.0";

/// Version tag of the structured run-report schema.
inline constexpr int kReportSchemaVersion = 1;

}  // namespace polydeform
