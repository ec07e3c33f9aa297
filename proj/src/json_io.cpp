#include "tcelldyn/json_io.hpp"

#include <stdexcept>

namespace tcelldyn {

namespace {

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("config: missing key \"") + key + "\"");
    if (!j.at(key).is_number())
        throw std::invalid_argument(std::string("config: key \"") + key + "\" must be a number");
    return j.at(key).get<double>();
}

double optional_number(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw std::invalid_argument(std::string("config: key \"") + key + "\" must be a number");
    return j.at(key).get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const ModelParams& params) {
    j = nlohmann::json{{"mu", params.mu}, {"r", params.r}, {"tau", params.tau}};
}

void from_json(const nlohmann::json& j, ModelParams& params) {
    params.mu = require_number(j, "mu");
    params.r = optional_number(j, "r", 1.0);
    params.tau = optional_number(j, "tau", 0.0);
    validate(params);
}

void to_json(nlohmann::json& j, const DCSchedule& schedule) {
    j = nlohmann::json{{"switch_times", schedule.switch_times()},
                       {"initial_value", schedule.initial_value()}};
}

void from_json(const nlohmann::json& j, DCSchedule& schedule) {
    std::vector<double> times;
    int initial = 1;
    if (j.contains("switch_times")) {
        if (!j.at("switch_times").is_array())
            throw std::invalid_argument("config: key \"schedule.switch_times\" must be an array");
        times = j.at("switch_times").get<std::vector<double>>();
    }
    if (j.contains("initial_value")) {
        if (!j.at("initial_value").is_number_integer())
            throw std::invalid_argument("config: key \"schedule.initial_value\" must be 0 or 1");
        initial = j.at("initial_value").get<int>();
    }
    try {
        schedule = DCSchedule(std::move(times), initial);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config: key \"schedule\": ") + e.what());
    }
}

void to_json(nlohmann::json& j, const HistoryFunction& history) {
    if (history.kind() == HistoryFunction::Kind::constant) {
        j = nlohmann::json{{"kind", "constant"}, {"value", history.constant_value()}};
    } else {
        j = nlohmann::json{{"kind", "sampled"},
                           {"times", history.times()},
                           {"values", history.values()},
                           {"derivatives", history.derivatives()}};
    }
}

void from_json(const nlohmann::json& j, HistoryFunction& history) {
    const std::string kind = j.value("kind", "constant");
    try {
        if (kind == "constant") {
            history = HistoryFunction::constant(require_number(j, "value"));
        } else if (kind == "sampled") {
            if (!j.contains("times") || !j.contains("values"))
                throw std::invalid_argument("missing key \"times\" or \"values\"");
            history = HistoryFunction::sampled(
                j.at("times").get<std::vector<double>>(), j.at("values").get<std::vector<double>>(),
                j.value("derivatives", std::vector<double>{}));
        } else {
            throw std::invalid_argument("kind must be \"constant\" or \"sampled\"");
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config: key \"history\": ") + e.what());
    }
}

void to_json(nlohmann::json& j, const SimConfig& config) {
    j = nlohmann::json{{"mu", config.params.mu},     {"r", config.params.r},
                       {"tau", config.params.tau},   {"schedule", config.schedule},
                       {"history", config.history},  {"step", config.step},
                       {"t_end", config.t_end}};
}

void from_json(const nlohmann::json& j, SimConfig& config) {
    config.params = j.get<ModelParams>();
    if (j.contains("schedule"))
        config.schedule = j.at("schedule").get<DCSchedule>();
    else
        config.schedule = DCSchedule::always_on();
    if (!j.contains("history"))
        throw std::invalid_argument("config: missing key \"history\"");
    config.history = j.at("history").get<HistoryFunction>();
    config.step = optional_number(j, "step", 0.0);
    config.t_end = optional_number(j, "t_end", 400.0);
    if (!(config.t_end > 0.0))
        throw std::invalid_argument("config: key \"t_end\" must be > 0");
    if (config.step < 0.0)
        throw std::invalid_argument("config: key \"step\" must be > 0");
}

SimConfig rescale_config(const SimConfig& config) {
    const double r = config.params.r;
    if (r == 1.0) return config;

    SimConfig scaled = config;
    const ScaledParams p = rescale(r, config.params.mu, config.params.tau);
    scaled.params = {p.mu, 1.0, p.tau};

    std::vector<double> switches = config.schedule.switch_times();
    for (double& s : switches) s *= r;
    scaled.schedule = DCSchedule(std::move(switches), config.schedule.initial_value());

    if (config.history.kind() == HistoryFunction::Kind::sampled) {
        std::vector<double> times = config.history.times();
        std::vector<double> derivs = config.history.derivatives();
        for (double& t : times) t *= r;
        for (double& d : derivs) d /= r;
        scaled.history = HistoryFunction::sampled(std::move(times), config.history.values(),
                                                  std::move(derivs));
    }

    scaled.step = config.step * r;
    scaled.t_end = config.t_end * r;
    return scaled;
}

}  // namespace tcelldyn
