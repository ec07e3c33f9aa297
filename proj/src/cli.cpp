#include "tcelldyn/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "tcelldyn/equilibria.hpp"
#include "tcelldyn/integrator.hpp"
#include "tcelldyn/stability.hpp"
#include "tcelldyn/svg.hpp"

namespace tcelldyn::cli {

namespace {

namespace fs = std::filesystem;

std::string num_to_label(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

const char* const kSeriesColors[] = {"#1c7ed6", "#e8590c", "#2b8a3e", "#9c36b5", "#e03131",
                                     "#0b7285", "#f59f00"};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
}

nlohmann::json root_to_json(const CharacteristicRoot& root) {
    return {{"re", root.real_part}, {"im", root.imag_part}, {"residual", root.residual}};
}

nlohmann::json equilibrium_report(double x_e, double mu, double tau) {
    const LinearizationCoefficients coeffs = linearize(x_e, mu);
    const CharacteristicRoot root = dominant_root(coeffs, tau);
    StabilityVerdict verdict = StabilityVerdict::marginal;
    if (std::abs(root.real_part) >= 1e-8)
        verdict = root.real_part < 0.0 ? StabilityVerdict::stable : StabilityVerdict::unstable;
    return {{"x", x_e},
            {"alpha", coeffs.alpha},
            {"beta", coeffs.beta},
            {"dominant_root", root_to_json(root)},
            {"verdict", to_string(verdict)}};
}

}  // namespace

std::string content_hash(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

nlohmann::json cmd_equilibria(double mu) {
    const EquilibriumSet set = find_equilibria(mu);
    std::vector<double> roots{set.zero};
    if (set.regime == EquilibriumRegime::three_equilibria) {
        roots.push_back(*set.x_minus);
        roots.push_back(*set.x_star);
    } else if (set.regime == EquilibriumRegime::tangent_double_root) {
        roots.push_back(*set.x_star);
    }
    return {{"mu", set.mu},
            {"roots", roots},
            {"regime", to_string(set.regime)},
            {"x_max", set.x_max_location}};
}

nlohmann::json cmd_stability(double mu, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("stability: tau must be >= 0");
    const EquilibriumSet set = find_equilibria(mu);
    nlohmann::json equilibria = nlohmann::json::array();
    equilibria.push_back(equilibrium_report(0.0, mu, tau));
    if (set.regime == EquilibriumRegime::three_equilibria) {
        equilibria.push_back(equilibrium_report(*set.x_minus, mu, tau));
        equilibria.push_back(equilibrium_report(*set.x_star, mu, tau));
    }
    return {{"mu", mu}, {"tau", tau}, {"regime", to_string(set.regime)},
            {"equilibria", equilibria}};
}

nlohmann::json cmd_switching(double mu, int n_max) {
    return switching_times(mu, n_max).taus;
}

namespace {

svg::Plot trajectory_plot(const Trajectory& traj, const EquilibriumSet& equilibria,
                          const std::string& title) {
    svg::Plot plot;
    plot.title = title;
    plot.x_label = "t";
    plot.y_label = "x";
    svg::Series series;
    series.x = traj.times();
    series.y = traj.values();
    series.label = "x(t)";
    plot.series.push_back(std::move(series));
    if (equilibria.x_minus && equilibria.regime == EquilibriumRegime::three_equilibria)
        plot.hlines.push_back({*equilibria.x_minus, "x-", "#868e96"});
    if (equilibria.x_star) plot.hlines.push_back({*equilibria.x_star, "x*", "#2b8a3e"});
    plot.y_min = 0.0;
    return plot;
}

}  // namespace

nlohmann::json cmd_simulate(const SimConfig& config, const fs::path& output_dir) {
    const SimConfig resolved = rescale_config(config);
    const nlohmann::json resolved_json = resolved;
    const std::string run_id = content_hash(resolved_json);

    const fs::path run_dir = output_dir / run_id;
    fs::create_directories(run_dir);

    const SolverConfig solver{resolved.step, resolved.t_end, true};
    const Trajectory traj = simulate(resolved.params, resolved.schedule, resolved.history, solver);
    const EquilibriumSet equilibria = find_equilibria(resolved.params.mu);
    const LongTermStats stats = classify_longterm_stats(traj, equilibria, resolved.t_end / 4.0);

    {
        std::ofstream csv(run_dir / "trajectory.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (run_dir / "trajectory.csv").string());
        traj.write_csv(csv);
    }

    svg::Plot plot = trajectory_plot(traj, equilibria,
                                     "mu = " + num_to_label(resolved.params.mu) +
                                         ", tau = " + num_to_label(resolved.params.tau));
    const bool always_off =
        resolved.schedule.switch_times().empty() && resolved.schedule.initial_value() == 0;
    if (always_off) {
        // Exact decay reference for the a == 0 regime.
        svg::Series ref;
        ref.label = "x0 exp(-mu t)";
        ref.color = "#e8590c";
        ref.dashed = true;
        const double x0 = traj.interpolate(0.0);
        const std::size_t n = 200;
        for (std::size_t i = 0; i <= n; ++i) {
            const double t = resolved.t_end * static_cast<double>(i) / static_cast<double>(n);
            ref.x.push_back(t);
            ref.y.push_back(x0 * std::exp(-resolved.params.mu * t));
        }
        plot.series.push_back(std::move(ref));
    }
    write_file(run_dir / "trajectory.svg", svg::render(plot));

    return {{"run_id", run_id},
            {"config", resolved_json},
            {"outcome",
             {{"classification", to_string(stats.behavior)},
              {"final_value", stats.final_value},
              {"amplitude", stats.amplitude},
              {"period_estimate", stats.period_estimate}}},
            {"artifact_paths",
             {{"csv", run_id + "/trajectory.csv"}, {"svg", run_id + "/trajectory.svg"}}}};
}

SweepSpec parse_sweep_spec(const nlohmann::json& j) {
    auto range = [&](const char* key, double& lo, double& hi, int& count) {
        if (!j.contains(key))
            throw std::invalid_argument(std::string("sweep spec: missing key \"") + key + "\"");
        const auto& r = j.at(key);
        if (!r.contains("lo") || !r.contains("hi") || !r.contains("count"))
            throw std::invalid_argument(std::string("sweep spec: key \"") + key +
                                        "\" needs lo, hi, count");
        lo = r.at("lo").get<double>();
        hi = r.at("hi").get<double>();
        count = r.at("count").get<int>();
        if (count < 1)
            throw std::invalid_argument(std::string("sweep spec: key \"") + key +
                                        ".count\" must be >= 1");
        if (!(lo <= hi))
            throw std::invalid_argument(std::string("sweep spec: key \"") + key +
                                        "\" needs lo <= hi");
    };
    SweepSpec spec;
    range("mu_range", spec.mu_lo, spec.mu_hi, spec.mu_count);
    range("tau_range", spec.tau_lo, spec.tau_hi, spec.tau_count);
    if (!(spec.mu_lo > 0.0 && spec.mu_hi < kFeedbackPeak))
        throw std::invalid_argument(
            "sweep spec: key \"mu_range\" must lie inside the existence window (0, 3^(3/4)/4)");
    if (!(spec.tau_lo >= 0.0))
        throw std::invalid_argument("sweep spec: key \"tau_range.lo\" must be >= 0");
    if (!j.contains("history_values") || !j.at("history_values").is_array() ||
        j.at("history_values").empty())
        throw std::invalid_argument("sweep spec: missing key \"history_values\"");
    spec.history_values = j.at("history_values").get<std::vector<double>>();
    for (double v : spec.history_values)
        if (!(v >= 0.0))
            throw std::invalid_argument("sweep spec: key \"history_values\" must be >= 0");
    std::sort(spec.history_values.begin(), spec.history_values.end());
    spec.t_end = j.value("t_end", 400.0);
    if (!(spec.t_end > 0.0)) throw std::invalid_argument("sweep spec: key \"t_end\" must be > 0");
    spec.step = j.value("step", 0.0);
    if (spec.step < 0.0) throw std::invalid_argument("sweep spec: key \"step\" must be > 0");
    if (j.contains("output_dir")) spec.output_dir = j.at("output_dir").get<std::string>();
    return spec;
}

namespace {

struct SweepCell {
    double mu = 0.0, tau = 0.0, history = 0.0;
    std::string classification = "error";
    double dominant_re = std::nan("");
    double analytic_tau0 = std::nan("");
    LongTermStats stats;
    std::string run_id;
};

void append_number(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

SweepCell run_cell(double mu, double tau, double history, const SweepSpec& spec) {
    SweepCell cell;
    cell.mu = mu;
    cell.tau = tau;
    cell.history = history;
    try {
        SimConfig config;
        config.params = {mu, 1.0, tau};
        config.schedule = DCSchedule::always_on();
        config.history = HistoryFunction::constant(history);
        config.step = spec.step;
        config.t_end = spec.t_end;
        cell.run_id = content_hash(nlohmann::json(config));

        const Trajectory traj =
            simulate(config.params, config.schedule, config.history, {spec.step, spec.t_end, true});
        const EquilibriumSet equilibria = find_equilibria(mu);
        cell.stats = classify_longterm_stats(traj, equilibria, spec.t_end / 4.0);
        cell.classification = to_string(cell.stats.behavior);
        cell.dominant_re = dominant_root(linearize(*equilibria.x_star, mu), tau).real_part;
        cell.analytic_tau0 = switching_times(mu, 0).taus.front();
    } catch (const std::exception&) {
        cell.classification = "error";
    }
    return cell;
}

}  // namespace

nlohmann::json cmd_sweep(const SweepSpec& spec, int jobs) {
    auto grid = [](double lo, double hi, int count) {
        std::vector<double> g;
        g.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            g.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return g;
    };
    const std::vector<double> mus = grid(spec.mu_lo, spec.mu_hi, spec.mu_count);
    const std::vector<double> taus = grid(spec.tau_lo, spec.tau_hi, spec.tau_count);
    const std::vector<double>& histories = spec.history_values;

    std::vector<SweepCell> cells(mus.size() * taus.size() * histories.size());
    auto cell_params = [&](std::size_t idx) {
        const std::size_t i_h = idx % histories.size();
        const std::size_t i_tau = (idx / histories.size()) % taus.size();
        const std::size_t i_mu = idx / (histories.size() * taus.size());
        return std::array<double, 3>{mus[i_mu], taus[i_tau], histories[i_h]};
    };

    const int n_jobs = std::clamp(jobs, 1, 64);
    if (n_jobs == 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto p = cell_params(i);
            cells[i] = run_cell(p[0], p[1], p[2], spec);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(n_jobs));
        for (int w = 0; w < n_jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                    const auto p = cell_params(i);
                    cells[i] = run_cell(p[0], p[1], p[2], spec);
                }
            });
        for (auto& w : workers) w.join();
    }

    fs::create_directories(spec.output_dir);

    // Rows come out sorted by (mu, tau, history) because the grids are
    // ascending and the index order matches.
    std::string csv = "mu,tau,history,classification,dominant_root_re,analytic_tau0\n";
    for (const SweepCell& cell : cells) {
        append_number(csv, cell.mu);
        csv.push_back(',');
        append_number(csv, cell.tau);
        csv.push_back(',');
        append_number(csv, cell.history);
        csv.push_back(',');
        csv.append(cell.classification);
        csv.push_back(',');
        append_number(csv, cell.dominant_re);
        csv.push_back(',');
        append_number(csv, cell.analytic_tau0);
        csv.push_back('\n');
    }
    write_file(spec.output_dir / "sweep.csv", csv);

    const std::vector<std::string> class_names = {"locked_to_x_star", "oscillating", "extinct",
                                                  "undetermined", "error"};
    const std::vector<std::string> palette = {"#2b8a3e", "#e8590c", "#495057", "#ced4da",
                                              "#c92a2a"};
    std::vector<svg::Heatmap> maps;
    for (std::size_t i_h = 0; i_h < histories.size(); ++i_h) {
        svg::Heatmap hm;
        hm.title = "long-term behavior, history x = " + num_to_label(histories[i_h]);
        hm.x_label = "tau";
        hm.y_label = "mu";
        hm.x_centers = taus;
        hm.y_centers = mus;
        hm.palette = palette;
        hm.legend_labels = class_names;
        hm.cells.assign(mus.size(), std::vector<int>(taus.size(), 3));
        for (std::size_t i_mu = 0; i_mu < mus.size(); ++i_mu)
            for (std::size_t i_tau = 0; i_tau < taus.size(); ++i_tau) {
                const std::size_t idx = (i_mu * taus.size() + i_tau) * histories.size() + i_h;
                const auto it =
                    std::find(class_names.begin(), class_names.end(), cells[idx].classification);
                hm.cells[i_mu][i_tau] =
                    static_cast<int>(it == class_names.end() ? 4 : it - class_names.begin());
            }
        maps.push_back(std::move(hm));
    }
    write_file(spec.output_dir / "sweep.svg", svg::render_heatmaps(maps));

    nlohmann::json runs = nlohmann::json::array();
    for (const SweepCell& cell : cells) {
        runs.push_back({{"run_id", cell.run_id},
                        {"config",
                         {{"mu", cell.mu},
                          {"tau", cell.tau},
                          {"history", cell.history},
                          {"step", spec.step},
                          {"t_end", spec.t_end}}},
                        {"outcome",
                         {{"classification", cell.classification},
                          {"final_value", cell.stats.final_value},
                          {"amplitude", cell.stats.amplitude},
                          {"period_estimate", cell.stats.period_estimate},
                          {"dominant_root_re", cell.dominant_re},
                          {"analytic_tau0", cell.analytic_tau0}}},
                        {"artifact_paths", {{"csv", "sweep.csv"}, {"svg", "sweep.svg"}}}});
    }
    write_file(spec.output_dir / "runs.json", runs.dump(2) + "\n");

    nlohmann::json spec_json{{"mu_range", {{"lo", spec.mu_lo}, {"hi", spec.mu_hi},
                                           {"count", spec.mu_count}}},
                             {"tau_range", {{"lo", spec.tau_lo}, {"hi", spec.tau_hi},
                                            {"count", spec.tau_count}}},
                             {"history_values", histories},
                             {"t_end", spec.t_end},
                             {"step", spec.step}};
    return {{"run_id", content_hash(spec_json)},
            {"cells", cells.size()},
            {"output_dir", spec.output_dir.string()},
            {"artifact_paths",
             {{"csv", "sweep.csv"}, {"svg", "sweep.svg"}, {"runs", "runs.json"}}}};
}

nlohmann::json cmd_figure(const std::string& name, const fs::path& output_dir) {
    fs::create_directories(output_dir);
    nlohmann::json meta{{"figure", name}};

    if (name == "fig2") {
        svg::Plot plot;
        plot.title = "positive equilibria: x - mu x^4 against the level mu";
        plot.x_label = "x";
        plot.y_label = "x - mu x^4";
        plot.x_min = 0.0;
        plot.x_max = 1.8;
        plot.y_min = 0.0;
        plot.y_max = 0.85;
        nlohmann::json intersections;
        const double mus[] = {0.3, 0.5, 0.569};
        for (std::size_t i = 0; i < 3; ++i) {
            const double mu = mus[i];
            const std::string color = kSeriesColors[i];
            svg::Series curve;
            curve.label = "mu = " + num_to_label(mu);
            curve.color = color;
            for (int k = 0; k <= 400; ++k) {
                const double x = 1.8 * k / 400.0;
                curve.x.push_back(x);
                curve.y.push_back(x - mu * x * x * x * x);
            }
            plot.series.push_back(std::move(curve));
            plot.hlines.push_back({mu, "", color});
            const EquilibriumSet set = find_equilibria(mu);
            std::vector<double> roots;
            if (set.x_minus) {
                plot.markers.push_back({*set.x_minus, mu, color});
                roots.push_back(*set.x_minus);
            }
            if (set.x_star && set.regime == EquilibriumRegime::three_equilibria) {
                plot.markers.push_back({*set.x_star, mu, color});
                roots.push_back(*set.x_star);
            }
            intersections[num_to_label(mu)] = roots;
        }
        write_file(output_dir / "fig2.svg", svg::render(plot, 760, 420));
        meta["path"] = (output_dir / "fig2.svg").string();
        meta["intersections"] = intersections;
        return meta;
    }

    if (name == "fig3") {
        // Bistability in the ODE limit: constant initial values on both sides
        // of x- split between the attractors 0 and x*.
        const double mu = 0.5;
        const double histories[] = {0.3, 0.5, 0.6, 1.2, 1.5};
        const EquilibriumSet set = find_equilibria(mu);
        svg::Plot plot;
        plot.title = "mu = 0.5, tau = 0: bistability";
        plot.x_label = "t";
        plot.y_label = "x";
        plot.y_min = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            const Trajectory traj =
                simulate({mu, 1.0, 0.0}, DCSchedule::always_on(),
                         HistoryFunction::constant(histories[i]), {0.0, 100.0, true});
            svg::Series s;
            s.label = "x(0) = " + num_to_label(histories[i]);
            s.color = kSeriesColors[i];
            s.x = traj.times();
            s.y = traj.values();
            plot.series.push_back(std::move(s));
        }
        plot.hlines.push_back({*set.x_minus, "x-", "#868e96"});
        plot.hlines.push_back({*set.x_star, "x*", "#2b8a3e"});
        write_file(output_dir / "fig3.svg", svg::render(plot, 760, 420));
        meta["path"] = (output_dir / "fig3.svg").string();
        return meta;
    }

    if (name == "fig4") {
        // Delay sequence: locked below the first switching delay, periodic
        // just above it, extinction for larger delays.
        const double mu = 0.5;
        const double taus[] = {1.0, 3.3, 4.0, 8.0};
        const EquilibriumSet set = find_equilibria(mu);
        std::vector<svg::Plot> panels;
        for (double tau : taus) {
            const Trajectory traj = simulate({mu, 1.0, tau}, DCSchedule::always_on(),
                                             HistoryFunction::constant(1.2), {0.0, 400.0, true});
            svg::Plot plot = trajectory_plot(traj, set, "mu = 0.5, tau = " + num_to_label(tau));
            panels.push_back(std::move(plot));
        }
        write_file(output_dir / "fig4.svg", svg::render(panels, 760, 260));
        meta["path"] = (output_dir / "fig4.svg").string();
        return meta;
    }

    throw std::invalid_argument("figure: unknown name \"" + name +
                                "\" (expected fig2, fig3 or fig4)");
}

int run(int argc, const char* const* argv) {
    CLI::App app{"single-delay T-cell proliferation model: simulation and stability toolkit"};
    app.fallthrough(true);
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = "out";
    int jobs = 1;
    double step = 0.0;
    double t_end = 0.0;
    app.add_option("--config", config_path, "JSON configuration file (simulate, sweep)");
    app.add_option("--output", output_dir, "output directory (default: out)");
    app.add_option("--jobs", jobs, "parallel workers for sweep (default: 1)");
    app.add_option("--step", step, "integration step override (default: tau/64)");
    app.add_option("--t-end", t_end, "integration end time override");

    auto* sim_cmd = app.add_subcommand("simulate", "integrate one configuration, write CSV + SVG");

    double mu = 0.5, tau = 0.0;
    int n_max = 2;
    auto* eq_cmd = app.add_subcommand("equilibria", "equilibrium set for a decay rate mu");
    eq_cmd->add_option("--mu", mu, "scaled decay rate")->required();

    auto* st_cmd = app.add_subcommand("stability", "linearization and dominant roots at (mu, tau)");
    st_cmd->add_option("--mu", mu, "scaled decay rate")->required();
    st_cmd->add_option("--tau", tau, "delay")->required();

    auto* sw_cmd = app.add_subcommand("switching-times", "candidate stability-switching delays");
    sw_cmd->add_option("--mu", mu, "scaled decay rate")->required();
    sw_cmd->add_option("--n-max", n_max, "largest index n (default: 2)");

    auto* sweep_cmd = app.add_subcommand("sweep", "classify a (mu, tau, history) grid");

    std::string figure_name;
    auto* fig_cmd = app.add_subcommand("figure", "emit a stock figure (fig2, fig3, fig4)");
    fig_cmd->add_option("name", figure_name, "fig2 | fig3 | fig4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        nlohmann::json out;
        if (*sim_cmd) {
            if (config_path.empty())
                throw std::invalid_argument("simulate: --config <path> is required");
            std::ifstream is(config_path);
            if (!is) throw std::invalid_argument("cannot open config file " + config_path);
            SimConfig config = nlohmann::json::parse(is).get<SimConfig>();
            if (step > 0.0) config.step = step;
            if (t_end > 0.0) config.t_end = t_end;
            out = cmd_simulate(config, output_dir);
        } else if (*eq_cmd) {
            out = cmd_equilibria(mu);
        } else if (*st_cmd) {
            out = cmd_stability(mu, tau);
        } else if (*sw_cmd) {
            out = cmd_switching(mu, n_max);
        } else if (*sweep_cmd) {
            if (config_path.empty())
                throw std::invalid_argument("sweep: --config <path> is required");
            std::ifstream is(config_path);
            if (!is) throw std::invalid_argument("cannot open config file " + config_path);
            SweepSpec spec = parse_sweep_spec(nlohmann::json::parse(is));
            if (step > 0.0) spec.step = step;
            if (t_end > 0.0) spec.t_end = t_end;
            if (app.count("--output") > 0) spec.output_dir = output_dir;
            out = cmd_sweep(spec, jobs);
        } else if (*fig_cmd) {
            out = cmd_figure(figure_name, output_dir);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tcelldyn::cli
