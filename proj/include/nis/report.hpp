#pragma once

#include "nis/group_scad.hpp"
#include "nis/inis.hpp"
#include "nis/marginal_screen.hpp"
#include "nis/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nis {

/// Schema version stamped into every report file.
inline constexpr const char* kReportVersion = "1";

/// Covariate index list as 1-based indices plus names (names optional).
nlohmann::json covariates_json(const std::vector<int>& indices,
                               const std::vector<std::string>& names);

nlohmann::json coef_json(const VCCoef& coef, const std::vector<std::string>& names);
nlohmann::json model_json(const ScadModel& model, const std::vector<std::string>& names);
nlohmann::json screen_json(const ScreenReport& report, const std::vector<std::string>& names);
nlohmann::json inis_json(const InisResult& result, const std::vector<std::string>& names);

/// Report skeleton: {report_version, command, config, data:{n,p,...}}.
nlohmann::json report_envelope(const std::string& command, const Dataset& data,
                               const nlohmann::json& config);

/// Writes pretty-printed JSON with a trailing newline. Reports carry no
/// timestamps or timings, so a rerun with the same seed and configuration
/// produces byte-identical files.
void write_report(const std::string& path, const nlohmann::json& report);

}  // namespace nis
