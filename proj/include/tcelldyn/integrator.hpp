#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tcelldyn/equilibria.hpp"
#include "tcelldyn/model.hpp"

namespace tcelldyn {

struct SolverConfig {
    double step = 0.0;  // <= 0 selects the default: tau/64 (or 2^-6 when tau == 0)
    double t_end = 0.0;
    bool clamp_negative = true;
};

// Per-node flag bits in Trajectory::flags() / the CSV regime_flags column.
inline constexpr std::uint8_t kNodeClamped = 1;     // value clamped up to 0
inline constexpr std::uint8_t kNodeBreakpoint = 2;  // integration restart node

/// Dense solution record on [-tau, t_end] (history included). Immutable
/// after construction; interpolation is cubic Hermite on stored node values
/// and one-sided derivatives, so derivative jumps at restart nodes do not
/// degrade the interpolant.
class Trajectory {
  public:
    Trajectory(std::vector<double> times, std::vector<double> values,
               std::vector<double> derivs_in, std::vector<double> derivs_out,
               std::vector<std::int8_t> a_values, std::vector<std::uint8_t> flags,
               std::vector<double> breakpoints, bool clamped);

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::int8_t>& a_values() const { return a_values_; }
    const std::vector<std::uint8_t>& flags() const { return flags_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    std::size_t size() const { return times_.size(); }
    double front_time() const { return times_.front(); }
    double back_time() const { return times_.back(); }
    bool clamped() const { return clamped_; }

    /// Cubic Hermite value at t; exact at nodes, clamped at 0 from below.
    /// Throws std::out_of_range outside the stored span.
    double interpolate(double t) const;

    /// Value at the last node.
    double final_value() const { return values_.back(); }

    /// CSV export: header t,x,a,regime_flags, one row per node,
    /// 17 significant digits.
    void write_csv(std::ostream& os) const;

  private:
    std::vector<double> times_, values_, derivs_in_, derivs_out_;
    std::vector<std::int8_t> a_values_;
    std::vector<std::uint8_t> flags_;
    std::vector<double> breakpoints_;
    bool clamped_ = false;
};

/// Method-of-steps RK4 solution of dx/dt = a(t-tau) f(x(t-tau)) x - mu x on
/// [0, t_end]. The step is adjusted to tau/ceil(tau/step) so it divides tau;
/// a step boundary is forced at every derivative-discontinuity time
/// ({0} union {k tau} union {s, s+tau : s a schedule switch}). Delayed state
/// is read from the trajectory's own interpolant, the delayed schedule value
/// exactly from the schedule.
Trajectory simulate(const ModelParams& params, const DCSchedule& schedule,
                    const HistoryFunction& history, const SolverConfig& config);

enum class LongTermBehavior { extinct, locked_to_x_star, oscillating, undetermined };

std::string to_string(LongTermBehavior behavior);

/// Summary statistics over the classification window (reported alongside the
/// label in run records).
struct LongTermStats {
    LongTermBehavior behavior = LongTermBehavior::undetermined;
    double final_value = 0.0;
    double amplitude = 0.0;        // peak-to-trough over the window
    double period_estimate = 0.0;  // mean spacing of local maxima, 0 if n/a
};

/// Classifies the final `window` time units: extinct when max x < 1e-3,
/// locked when max |x - x*| < 1e-3, oscillating when the peak-to-trough
/// amplitude exceeds 1e-2 and successive maxima are evenly spaced (< 5%
/// spread). Requires the integration span to be at least 2*window.
LongTermBehavior classify_longterm(const Trajectory& trajectory, const EquilibriumSet& equilibria,
                                   double window);

/// classify_longterm plus the summary statistics it is based on.
LongTermStats classify_longterm_stats(const Trajectory& trajectory,
                                      const EquilibriumSet& equilibria, double window);

}  // namespace tcelldyn
