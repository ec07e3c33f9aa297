#include "tcelldyn/equilibria.hpp"

#include <cmath>
#include <stdexcept>

#include "tcelldyn/model.hpp"

namespace tcelldyn {

std::string to_string(EquilibriumRegime regime) {
    switch (regime) {
        case EquilibriumRegime::three_equilibria: return "three_equilibria";
        case EquilibriumRegime::tangent_double_root: return "tangent_double_root";
        case EquilibriumRegime::zero_only: return "zero_only";
    }
    return "unknown";
}

namespace {

constexpr double kTangentBand = 1e-9;

// g(x) = x - mu x^4 - mu; its positive zeros are the nonzero equilibria.
double g(double x, double mu) {
    const double x2 = x * x;
    return x - mu * x2 * x2 - mu;
}

// Plain bisection, run until the bracket cannot shrink in double precision.
// g is monotone on each side of x_max, so the brackets are guaranteed.
double bisect_root(double lo, double hi, double mu) {
    double g_lo = g(lo, mu);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = g(mid, mu);
        if (g_mid == 0.0) return mid;
        if ((g_lo < 0.0) == (g_mid < 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(g(lo, mu)) < std::abs(g(hi, mu)) ? lo : hi;
}

}  // namespace

EquilibriumSet find_equilibria(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("find_equilibria: mu must be > 0");

    EquilibriumSet set;
    set.mu = mu;
    set.x_max_location = std::pow(4.0 * mu, -1.0 / 3.0);

    if (std::abs(mu - kFeedbackPeak) < kTangentBand) {
        set.regime = EquilibriumRegime::tangent_double_root;
        set.x_minus = set.x_max_location;
        set.x_star = set.x_max_location;
        return set;
    }
    if (g(set.x_max_location, mu) <= 0.0 || mu > kFeedbackPeak) {
        set.regime = EquilibriumRegime::zero_only;
        return set;
    }

    set.regime = EquilibriumRegime::three_equilibria;
    // g(0) = -mu < 0 < g(x_max), and g(mu^(-1/3)) = -mu < 0.
    set.x_minus = bisect_root(0.0, set.x_max_location, mu);
    set.x_star = bisect_root(set.x_max_location, std::pow(mu, -1.0 / 3.0), mu);
    return set;
}

Interval existence_window() {
    return {0.0, kFeedbackPeak};
}

}  // namespace tcelldyn
