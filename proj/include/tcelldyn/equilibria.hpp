#pragma once

#include <optional>
#include <string>

namespace tcelldyn {

enum class EquilibriumRegime {
    three_equilibria,
    tangent_double_root,
    zero_only,
};

std::string to_string(EquilibriumRegime regime);

/// Fixed points of the scaled system dx/dt = x_tau/(1+x_tau^4) x - mu x.
/// Zero is always an equilibrium; the positive ones solve
/// x(1 - mu x^3) = mu and exist for mu in (0, 3^(3/4)/4).
struct EquilibriumSet {
    double mu = 0.0;
    double zero = 0.0;
    std::optional<double> x_minus;   // smaller positive root
    std::optional<double> x_star;    // larger positive root
    double x_max_location = 0.0;     // argmax of x - mu x^4: (4 mu)^(-1/3)
    EquilibriumRegime regime = EquilibriumRegime::zero_only;
};

/// All non-negative equilibria for the given (scaled) decay rate.
/// Positive roots are bracketed in (0, x_max) and (x_max, mu^(-1/3)) and
/// refined by bisection until the bracket cannot shrink; residuals of the
/// returned roots satisfy |x(1 - mu x^3) - mu| < 1e-12.
/// A mu within 1e-9 of the existence boundary reports tangent_double_root
/// with both roots at x_max. Requires mu > 0.
EquilibriumSet find_equilibria(double mu);

struct Interval {
    double lo;
    double hi;
};

/// The open mu-interval (0, 3^(3/4)/4) on which positive equilibria exist.
Interval existence_window();

}  // namespace tcelldyn
