#pragma once

#include <json.hpp>

#include "tcelldyn/model.hpp"

namespace tcelldyn {

// JSON field names are part of the tool's external contract:
//   mu, r, tau, schedule.switch_times, schedule.initial_value,
//   history.kind, history.value | history.{times,values,derivatives},
//   step, t_end.

void to_json(nlohmann::json& j, const ModelParams& params);
void from_json(const nlohmann::json& j, ModelParams& params);

void to_json(nlohmann::json& j, const DCSchedule& schedule);
void from_json(const nlohmann::json& j, DCSchedule& schedule);

void to_json(nlohmann::json& j, const HistoryFunction& history);
void from_json(const nlohmann::json& j, HistoryFunction& history);

/// One simulation run as configured from a JSON document.
struct SimConfig {
    ModelParams params;
    DCSchedule schedule = DCSchedule::always_on();
    HistoryFunction history = HistoryFunction::constant(1.0);
    double step = 0.0;   // 0 -> solver default
    double t_end = 400.0;
};

void to_json(nlohmann::json& j, const SimConfig& config);
/// Throws std::invalid_argument naming the offending key on bad input.
void from_json(const nlohmann::json& j, SimConfig& config);

/// Normalizes a configuration to the canonical r = 1 form: parameters via
/// rescale(), schedule switch times and t_end/step mapped to t' = r*t units,
/// history mapped to phi'(t') = phi(t'/r).
SimConfig rescale_config(const SimConfig& config);

}  // namespace tcelldyn
