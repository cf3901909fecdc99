#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sensint/casebook.hpp"

namespace sensint::report {

inline constexpr int kSchemaVersion = 1;

/// Header omega,mag,log_mag,kernel_weight; the kernel is taken at `sp`.
std::string sweep_csv(const SweepSamples& s, const SingularPoint& sp);

nlohmann::json to_json(const SensitivityIndices& idx);
nlohmann::json to_json(const IntegralResult& r);
nlohmann::json to_json(const BoundReport& b);
nlohmann::json to_json(const SingularPoint& sp);
nlohmann::json to_json(const LoopReport& l, bool with_sweep = false);
nlohmann::json to_json(const MismatchReport& m);
nlohmann::json to_json(const CaseReport& r, bool with_sweep = false);

/// Wraps a body with schema_version and the producing command.
nlohmann::json document(nlohmann::json body, const std::string& command);

/// Six significant digits, "nan" for a missing value.
std::string num(double v);

std::string indices_text(const SensitivityIndices& idx);
std::string integral_text(const std::string& label, const IntegralResult& r);
std::string bound_text(const BoundReport& b);
std::string loop_text(const LoopReport& l);
std::string mismatch_text(const MismatchReport& m);
std::string case_text(const CaseReport& r);

/// Write to a sibling temporary and rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace sensint::report
