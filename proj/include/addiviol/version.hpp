#pragma once

namespace addiviol {

inline constexpr const char* kToolName = "addiviol";
inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

}  // namespace addiviol
