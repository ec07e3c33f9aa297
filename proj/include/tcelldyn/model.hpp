#pragma once

#include <vector>

namespace tcelldyn {

// Peak location of the feedback curve x/(1+x^4): 3^(-1/4).
inline constexpr double kFeedbackArgmax = 0.7598356856515925;
// Peak value of x/(1+x^4), and at the same time the upper end of the
// mu-interval on which positive equilibria exist: 3^(3/4)/4.
inline constexpr double kFeedbackPeak = 0.5698767642386944;

/// Model constants: decay rate mu, feedback scale r, delay tau.
/// Time units are those of the underlying equation; rescale() maps an
/// (r != 1) parameterization onto the canonical r = 1 form.
struct ModelParams {
    double mu = 0.5;
    double r = 1.0;
    double tau = 0.0;

    // True iff the scaled decay rate mu/r lies below 3^(3/4)/4, i.e. the
    // system has two positive equilibria in addition to zero.
    bool has_positive_equilibria() const;
};

/// Throws std::invalid_argument unless mu > 0, r > 0 and tau >= 0.
void validate(const ModelParams& params);

/// Piecewise-constant 0/1 indicator of DC presence. Right-continuous:
/// the value at a switch time is the post-switch value. The always-on
/// schedule is an empty switch list with initial value 1.
class DCSchedule {
  public:
    DCSchedule() = default;  // always on
    DCSchedule(std::vector<double> switch_times, int initial_value);

    static DCSchedule always_on() { return DCSchedule({}, 1); }
    static DCSchedule always_off() { return DCSchedule({}, 0); }

    int evaluate(double t) const;
    const std::vector<double>& switch_times() const { return switch_times_; }
    int initial_value() const { return initial_; }

  private:
    std::vector<double> switch_times_;
    int initial_ = 1;
};

/// Initial data x(t) for t in [-tau, 0]: either a constant or a sampled
/// segment with node derivatives (cubic Hermite between nodes).
class HistoryFunction {
  public:
    enum class Kind { constant, sampled };

    static HistoryFunction constant(double value);
    // times strictly increasing; derivatives optional (empty -> secant slopes).
    static HistoryFunction sampled(std::vector<double> times,
                                   std::vector<double> values,
                                   std::vector<double> derivatives = {});

    Kind kind() const { return kind_; }
    double constant_value() const { return constant_value_; }

    double value(double t) const;
    double derivative(double t) const;

    // True when the history is defined on all of [t_lo, t_hi].
    bool covers(double t_lo, double t_hi) const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& derivatives() const { return derivs_; }

  private:
    HistoryFunction() = default;
    Kind kind_ = Kind::constant;
    double constant_value_ = 0.0;
    std::vector<double> times_, values_, derivs_;
};

/// Activation rate r*x_tau/(1 + x_tau^4). Requires x_tau >= 0, r > 0.
double feedback(double x_tau, double r);

/// Full right-hand side a_tau * f(x_tau) * x - mu * x. The delayed factors
/// are a and x at time t - tau; x itself is the current state.
double rhs(double x, double x_tau, int a_tau, const ModelParams& params);

struct ScaledParams {
    double mu;
    double tau;
};

/// Maps (r, mu, tau) onto the r = 1 form via t' = r*t: returns
/// (mu/r, r*tau). Solutions of the scaled system at time t' equal
/// solutions of the original at time t'/r.
ScaledParams rescale(double r, double mu, double tau);

}  // namespace tcelldyn
