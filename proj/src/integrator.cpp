#include "tcelldyn/integrator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tcelldyn/hermite.hpp"

namespace tcelldyn {

std::string to_string(LongTermBehavior behavior) {
    switch (behavior) {
        case LongTermBehavior::extinct: return "extinct";
        case LongTermBehavior::locked_to_x_star: return "locked_to_x_star";
        case LongTermBehavior::oscillating: return "oscillating";
        case LongTermBehavior::undetermined: return "undetermined";
    }
    return "unknown";
}

Trajectory::Trajectory(std::vector<double> times, std::vector<double> values,
                       std::vector<double> derivs_in, std::vector<double> derivs_out,
                       std::vector<std::int8_t> a_values, std::vector<std::uint8_t> flags,
                       std::vector<double> breakpoints, bool clamped)
    : times_(std::move(times)),
      values_(std::move(values)),
      derivs_in_(std::move(derivs_in)),
      derivs_out_(std::move(derivs_out)),
      a_values_(std::move(a_values)),
      flags_(std::move(flags)),
      breakpoints_(std::move(breakpoints)),
      clamped_(clamped) {}

namespace {

// Hermite evaluation over (times, values, one-sided slopes). Interpolation on
// [t_i, t_i+1] uses the outgoing slope at i and the incoming slope at i+1, so
// restart nodes with two-sided derivative jumps interpolate cleanly.
double hermite_at(const std::vector<double>& times, const std::vector<double>& values,
                  const std::vector<double>& d_out, const std::vector<double>& d_in, double t) {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    if (i > 0) --i;
    if (i + 1 >= times.size()) i = times.size() - 2;
    if (t == times[i]) return values[i];
    if (t == times[i + 1]) return values[i + 1];
    return hermite_value(times[i], values[i], d_out[i], times[i + 1], values[i + 1], d_in[i + 1],
                         t);
}

}  // namespace

double Trajectory::interpolate(double t) const {
    const double slack = 1e-9 * std::max(1.0, std::abs(times_.back()));
    if (t < times_.front() - slack || t > times_.back() + slack)
        throw std::out_of_range("Trajectory::interpolate: t outside stored span");
    t = std::clamp(t, times_.front(), times_.back());
    const double v = hermite_at(times_, values_, derivs_out_, derivs_in_, t);
    return std::max(v, 0.0);  // population stays non-negative
}

namespace {

void append_number(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

}  // namespace

void Trajectory::write_csv(std::ostream& os) const {
    std::string out = "t,x,a,regime_flags\n";
    for (std::size_t i = 0; i < times_.size(); ++i) {
        append_number(out, times_[i]);
        out.push_back(',');
        append_number(out, values_[i]);
        out.push_back(',');
        out.append(std::to_string(static_cast<int>(a_values_[i])));
        out.push_back(',');
        out.append(std::to_string(static_cast<int>(flags_[i])));
        out.push_back('\n');
    }
    os << out;
}

namespace {

struct NodeStore {
    std::vector<double> times, values, d_in, d_out;
    std::vector<std::int8_t> a_values;
    std::vector<std::uint8_t> flags;
};

}  // namespace

Trajectory simulate(const ModelParams& params, const DCSchedule& schedule,
                    const HistoryFunction& history, const SolverConfig& config) {
    validate(params);
    if (!(config.t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be > 0");
    if (config.step < 0.0) throw std::invalid_argument("SolverConfig: step must be > 0");

    const double tau = params.tau;
    const double t_end = config.t_end;
    const bool clamp = config.clamp_negative;
    if (!history.covers(-tau, 0.0))
        throw std::invalid_argument("simulate: history undefined on [-tau, 0]");

    const double h_req = config.step > 0.0 ? config.step : (tau > 0.0 ? tau / 64.0 : 1.0 / 64.0);
    std::size_t n_hist = 0;
    double h = h_req;
    if (tau > 0.0) {
        n_hist = static_cast<std::size_t>(std::max(1.0, std::ceil(tau / h_req - 1e-12)));
        h = tau / static_cast<double>(n_hist);  // exact divisor of tau
    }

    // Derivative discontinuities propagate to {k tau} and to s, s + tau for
    // every schedule switch s; forcing step boundaries there keeps each RK4
    // step on smooth data.
    std::vector<double> breakpoints{0.0};
    if (tau > 0.0)
        for (std::size_t k = 1; static_cast<double>(k) * tau < t_end * (1.0 + 1e-12); ++k)
            breakpoints.push_back(static_cast<double>(k) * tau);
    for (double s : schedule.switch_times()) {
        if (s > 0.0 && s < t_end) breakpoints.push_back(s);
        if (s + tau > 0.0 && s + tau < t_end) breakpoints.push_back(s + tau);
    }
    breakpoints.push_back(t_end);
    std::sort(breakpoints.begin(), breakpoints.end());
    const double merge_tol = 1e-12 * std::max(1.0, t_end);
    std::vector<double> bps;
    for (double b : breakpoints) {
        if (b < 0.0 || b > t_end) continue;
        if (!bps.empty() && b - bps.back() < merge_tol) continue;
        bps.push_back(b);
    }
    bps.back() = t_end;

    NodeStore n;
    const std::size_t reserve = n_hist + static_cast<std::size_t>(t_end / h) + bps.size() + 16;
    n.times.reserve(reserve);
    n.values.reserve(reserve);
    n.d_in.reserve(reserve);
    n.d_out.reserve(reserve);
    n.a_values.reserve(reserve);
    n.flags.reserve(reserve);

    auto push_node = [&](double t, double x, double d, std::uint8_t flag) {
        n.times.push_back(t);
        n.values.push_back(x);
        n.d_in.push_back(d);
        n.d_out.push_back(d);
        n.a_values.push_back(static_cast<std::int8_t>(schedule.evaluate(t)));
        n.flags.push_back(flag);
    };

    // History nodes on [-tau, 0]; x(0) comes from the history.
    if (tau > 0.0) {
        for (std::size_t k = 0; k <= n_hist; ++k) {
            const double t = k == n_hist ? 0.0 : -tau + static_cast<double>(k) * h;
            const std::uint8_t flag = (k == 0 || k == n_hist) ? kNodeBreakpoint : 0;
            push_node(t, history.value(t), history.derivative(t), flag);
        }
    } else {
        push_node(0.0, history.value(0.0), history.derivative(0.0), kNodeBreakpoint);
    }

    bool clamped_any = false;

    // Delayed state read from the committed part of this trajectory. Since
    // the local step never exceeds tau, queries land in [-tau, t_committed]
    // up to rounding; clamping absorbs the last-ulp cases.
    auto delayed_value = [&](double q) {
        q = std::clamp(q, n.times.front(), n.times.back());
        const double v = hermite_at(n.times, n.values, n.d_out, n.d_in, q);
        return clamp ? std::max(v, 0.0) : v;
    };

    for (std::size_t seg = 0; seg + 1 < bps.size(); ++seg) {
        const double b0 = bps[seg];
        const double b1 = bps[seg + 1];
        const double len = b1 - b0;
        const auto n_steps =
            static_cast<std::size_t>(std::max(1.0, std::ceil(len / h - 1e-9)));
        // a(t - tau) is constant on [b0, b1): any switch inside would have
        // forced a breakpoint.
        const int a_seg = schedule.evaluate(b0 - tau);

        auto deriv = [&](double t, double x) {
            if (clamp) x = std::max(x, 0.0);
            double growth = 0.0;
            if (a_seg == 1) {
                const double x_tau = tau > 0.0 ? delayed_value(t - tau) : x;
                growth = feedback(x_tau, params.r) * x;
            }
            return growth - params.mu * x;
        };

        double x0 = n.values.back();
        n.d_out.back() = deriv(b0, x0);  // outgoing slope under this segment's a

        for (std::size_t i = 0; i < n_steps; ++i) {
            const double t0 = b0 + len * static_cast<double>(i) / static_cast<double>(n_steps);
            const double t1 = i + 1 == n_steps
                                  ? b1
                                  : b0 + len * static_cast<double>(i + 1) /
                                             static_cast<double>(n_steps);
            const double hs = t1 - t0;
            const double k1 = n.d_out.back();
            const double k2 = deriv(t0 + 0.5 * hs, x0 + 0.5 * hs * k1);
            const double k3 = deriv(t0 + 0.5 * hs, x0 + 0.5 * hs * k2);
            const double k4 = deriv(t1, x0 + hs * k3);
            double x1 = x0 + hs * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;

            std::uint8_t flag = 0;
            if (x1 < 0.0 && clamp) {
                x1 = 0.0;
                flag |= kNodeClamped;
                clamped_any = true;
            }
            if (i + 1 == n_steps) flag |= kNodeBreakpoint;
            push_node(t1, x1, 0.0, flag);
            n.d_in.back() = n.d_out.back() = deriv(t1, x1);
            x0 = x1;
        }
    }

    return Trajectory(std::move(n.times), std::move(n.values), std::move(n.d_in),
                      std::move(n.d_out), std::move(n.a_values), std::move(n.flags),
                      std::move(bps), clamped_any);
}

LongTermStats classify_longterm_stats(const Trajectory& trajectory,
                                      const EquilibriumSet& equilibria, double window) {
    if (!(window > 0.0))
        throw std::invalid_argument("classify_longterm: window must be > 0");
    const double span = trajectory.back_time();
    if (span < 2.0 * window)
        throw std::invalid_argument("classify_longterm: window longer than half the trajectory");

    const auto& times = trajectory.times();
    const auto& values = trajectory.values();
    const double w0 = trajectory.back_time() - window;
    const std::size_t first =
        static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), w0) - times.begin());

    double mx = values[first];
    double mn = values[first];
    for (std::size_t i = first; i < values.size(); ++i) {
        mx = std::max(mx, values[i]);
        mn = std::min(mn, values[i]);
    }

    // Local maxima with parabolic refinement of the peak time.
    std::vector<double> peak_times;
    for (std::size_t i = std::max(first, std::size_t{1}); i + 1 < values.size(); ++i) {
        if (!(values[i - 1] < values[i] && values[i] >= values[i + 1])) continue;
        const double t0 = times[i - 1], t1 = times[i], t2 = times[i + 1];
        const double v0 = values[i - 1], v1 = values[i], v2 = values[i + 1];
        const double num = (t1 - t0) * (t1 - t0) * (v1 - v2) - (t2 - t1) * (t2 - t1) * (v1 - v0);
        const double den = (t1 - t0) * (v1 - v2) + (t2 - t1) * (v1 - v0);
        peak_times.push_back(std::abs(den) > 1e-300 ? t1 - 0.5 * num / den : t1);
    }

    LongTermStats stats;
    stats.final_value = values.back();
    stats.amplitude = mx - mn;
    if (peak_times.size() >= 2) {
        double sum = 0.0;
        for (std::size_t i = 1; i < peak_times.size(); ++i)
            sum += peak_times[i] - peak_times[i - 1];
        stats.period_estimate = sum / static_cast<double>(peak_times.size() - 1);
    }

    if (mx < 1e-3) {
        stats.behavior = LongTermBehavior::extinct;
        return stats;
    }
    if (equilibria.x_star) {
        double dev = 0.0;
        for (std::size_t i = first; i < values.size(); ++i)
            dev = std::max(dev, std::abs(values[i] - *equilibria.x_star));
        if (dev < 1e-3) {
            stats.behavior = LongTermBehavior::locked_to_x_star;
            return stats;
        }
    }
    if (stats.amplitude > 1e-2 && peak_times.size() >= 3) {
        double g_min = peak_times[1] - peak_times[0];
        double g_max = g_min;
        double g_sum = 0.0;
        for (std::size_t i = 1; i < peak_times.size(); ++i) {
            const double g = peak_times[i] - peak_times[i - 1];
            g_min = std::min(g_min, g);
            g_max = std::max(g_max, g);
            g_sum += g;
        }
        const double g_mean = g_sum / static_cast<double>(peak_times.size() - 1);
        if (g_mean > 0.0 && (g_max - g_min) / g_mean < 0.05) {
            stats.behavior = LongTermBehavior::oscillating;
            return stats;
        }
    }
    stats.behavior = LongTermBehavior::undetermined;
    return stats;
}

LongTermBehavior classify_longterm(const Trajectory& trajectory, const EquilibriumSet& equilibria,
                                   double window) {
    return classify_longterm_stats(trajectory, equilibria, window).behavior;
}

}  // namespace tcelldyn
