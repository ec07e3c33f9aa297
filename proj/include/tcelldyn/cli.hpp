#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tcelldyn/json_io.hpp"

namespace tcelldyn::cli {

/// Grid specification for the sweep command.
struct SweepSpec {
    double mu_lo = 0.0, mu_hi = 0.0;
    int mu_count = 1;
    double tau_lo = 0.0, tau_hi = 0.0;
    int tau_count = 1;
    std::vector<double> history_values;
    double t_end = 400.0;
    double step = 0.0;  // 0 -> solver default per cell
    std::filesystem::path output_dir = "sweep";
};

/// Throws std::invalid_argument naming the offending key on bad input.
SweepSpec parse_sweep_spec(const nlohmann::json& j);

/// Content hash (FNV-1a 64) of a canonically serialized JSON value, as hex.
std::string content_hash(const nlohmann::json& j);

// Subcommand bodies. Each returns the JSON document printed on stdout.
nlohmann::json cmd_equilibria(double mu);
nlohmann::json cmd_stability(double mu, double tau);
nlohmann::json cmd_switching(double mu, int n_max);

/// Runs one simulation: writes <output_dir>/<run_id>/trajectory.{csv,svg}
/// and returns the run record. The config is normalized to r = 1 first.
nlohmann::json cmd_simulate(const SimConfig& config, const std::filesystem::path& output_dir);

/// Runs the (mu, tau, history) grid, jobs cells in parallel, and writes
/// sweep.csv, sweep.svg and runs.json under spec.output_dir. Per-cell
/// failures are recorded as classification "error" without aborting.
nlohmann::json cmd_sweep(const SweepSpec& spec, int jobs = 1);

/// Emits one of the stock figures (fig2, fig3, fig4) as an SVG file.
nlohmann::json cmd_figure(const std::string& name, const std::filesystem::path& output_dir);

/// Full command-line entry point. Exit codes: 0 success, 1 internal error,
/// 2 invalid input.
int run(int argc, const char* const* argv);

}  // namespace tcelldyn::cli
