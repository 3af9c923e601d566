#pragma once

#include <json.hpp>
#include <string>

#include "skt/conservation.hpp"
#include "skt/params.hpp"
#include "skt/residuals.hpp"
#include "skt/scenario.hpp"
#include "skt/solver.hpp"

namespace skt {

/// Full 17-significant-digit round-trip formatting ('.' decimal point).
std::string format_g17(double value);

nlohmann::json params_to_json(const SktParams& p);

/// Flat ten-key object; unknown keys are rejected with a path-qualified
/// message, missing or non-numeric fields likewise.
SktParams params_from_json(const nlohmann::json& j, const std::string& path = "$");

/// One row per equation: equation_id, max_abs, mean_abs, samples,
/// worst_t, worst_x, worst_u, worst_v, pass. LF line endings.
std::string residual_report_csv(const ResidualReport& r);
nlohmann::json residual_report_json(const ResidualReport& r);

nlohmann::json ambiguity_report_json(const AmbiguityReport& a);
nlohmann::json scenario_report_json(const ScenarioReport& r);
nlohmann::json convergence_report_json(const ConvergenceReport& r);
nlohmann::json asymptotics_report_json(const AsymptoticsReport& r);

std::string conservation_report_csv(const ConservationReport& r);
nlohmann::json conservation_report_json(const ConservationReport& r);

/// Long-format t,x,u,v rows.
std::string trajectory_csv(const Trajectory& t);
nlohmann::json trajectory_sidecar_json(const Trajectory& t, const SktParams& p);

}  // namespace skt
