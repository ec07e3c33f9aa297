#include "tcelldyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcelldyn/hermite.hpp"

namespace tcelldyn {

bool ModelParams::has_positive_equilibria() const {
    return mu / r < kFeedbackPeak;
}

void validate(const ModelParams& params) {
    if (!(params.mu > 0.0)) throw std::invalid_argument("ModelParams: mu must be > 0");
    if (!(params.r > 0.0)) throw std::invalid_argument("ModelParams: r must be > 0");
    if (!(params.tau >= 0.0)) throw std::invalid_argument("ModelParams: tau must be >= 0");
}

DCSchedule::DCSchedule(std::vector<double> switch_times, int initial_value)
    : switch_times_(std::move(switch_times)), initial_(initial_value) {
    if (initial_ != 0 && initial_ != 1)
        throw std::invalid_argument("DCSchedule: initial_value must be 0 or 1");
    for (std::size_t i = 0; i < switch_times_.size(); ++i) {
        if (!std::isfinite(switch_times_[i]))
            throw std::invalid_argument("DCSchedule: switch times must be finite");
        if (i > 0 && !(switch_times_[i - 1] < switch_times_[i]))
            throw std::invalid_argument("DCSchedule: switch times must be strictly increasing");
    }
}

int DCSchedule::evaluate(double t) const {
    // Right-continuous: a switch at s takes effect at t = s.
    const auto it = std::upper_bound(switch_times_.begin(), switch_times_.end(), t);
    const auto flips = static_cast<std::size_t>(it - switch_times_.begin());
    return (initial_ + static_cast<int>(flips % 2)) % 2;
}

HistoryFunction HistoryFunction::constant(double value) {
    if (!(value >= 0.0)) throw std::invalid_argument("HistoryFunction: value must be >= 0");
    HistoryFunction h;
    h.kind_ = Kind::constant;
    h.constant_value_ = value;
    return h;
}

HistoryFunction HistoryFunction::sampled(std::vector<double> times, std::vector<double> values,
                                         std::vector<double> derivatives) {
    if (times.size() < 2 || times.size() != values.size())
        throw std::invalid_argument("HistoryFunction: need >= 2 samples, times matching values");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i - 1] < times[i]))
            throw std::invalid_argument("HistoryFunction: sample times must be strictly increasing");
        if (!(values[i] >= 0.0))
            throw std::invalid_argument("HistoryFunction: sample values must be >= 0");
    }
    if (derivatives.empty()) {
        // Secant slopes as a fallback when node derivatives are not supplied.
        derivatives.resize(times.size());
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            derivatives[i] = (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
        derivatives.back() = derivatives[times.size() - 2];
    } else if (derivatives.size() != times.size()) {
        throw std::invalid_argument("HistoryFunction: derivatives must match sample count");
    }
    HistoryFunction h;
    h.kind_ = Kind::sampled;
    h.times_ = std::move(times);
    h.values_ = std::move(values);
    h.derivs_ = std::move(derivatives);
    return h;
}

namespace {

std::size_t segment_index(const std::vector<double>& times, double t) {
    if (t < times.front() || t > times.back())
        throw std::out_of_range("HistoryFunction: t outside sampled span");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    if (i > 0) --i;
    if (i + 1 >= times.size()) i = times.size() - 2;
    return i;
}

}  // namespace

double HistoryFunction::value(double t) const {
    if (kind_ == Kind::constant) return constant_value_;
    const std::size_t i = segment_index(times_, t);
    if (t == times_[i]) return values_[i];
    if (t == times_[i + 1]) return values_[i + 1];
    const double v = hermite_value(times_[i], values_[i], derivs_[i], times_[i + 1], values_[i + 1],
                                   derivs_[i + 1], t);
    return std::max(v, 0.0);
}

double HistoryFunction::derivative(double t) const {
    if (kind_ == Kind::constant) return 0.0;
    const std::size_t i = segment_index(times_, t);
    return hermite_derivative(times_[i], values_[i], derivs_[i], times_[i + 1], values_[i + 1],
                              derivs_[i + 1], t);
}

bool HistoryFunction::covers(double t_lo, double t_hi) const {
    if (kind_ == Kind::constant) return true;
    return times_.front() <= t_lo && times_.back() >= t_hi;
}

double feedback(double x_tau, double r) {
    if (!(x_tau >= 0.0)) throw std::invalid_argument("feedback: x_tau must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("feedback: r must be > 0");
    const double x2 = x_tau * x_tau;
    return r * x_tau / (1.0 + x2 * x2);
}

double rhs(double x, double x_tau, int a_tau, const ModelParams& params) {
    if (!(x >= 0.0)) throw std::invalid_argument("rhs: x must be >= 0");
    if (a_tau != 0 && a_tau != 1) throw std::invalid_argument("rhs: a_tau must be 0 or 1");
    const double activation = a_tau == 1 ? feedback(x_tau, params.r) * x : 0.0;
    return activation - params.mu * x;
}

ScaledParams rescale(double r, double mu, double tau) {
    if (!(r > 0.0)) throw std::invalid_argument("rescale: r must be > 0");
    return {mu / r, r * tau};
}

}  // namespace tcelldyn
