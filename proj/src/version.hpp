#pragma once

namespace pqhyp {

inline constexpr const char* kToolName = "pqhyp";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

}  // namespace pqhyp
