#pragma once

#include <string>
#include <vector>

namespace tcelldyn {

/// Coefficients of the linearization dz/dt = alpha z_tau + beta z about an
/// equilibrium x_E of the scaled system (z = x - x_E).
struct LinearizationCoefficients {
    double alpha = 0.0;  // delayed term
    double beta = 0.0;   // instantaneous term
    double equilibrium = 0.0;
};

/// One root of the characteristic equation lambda = alpha e^(-lambda tau) + beta.
/// Roots come in conjugate pairs; the representative stored has imag_part >= 0.
struct CharacteristicRoot {
    double real_part = 0.0;
    double imag_part = 0.0;
    double residual = 0.0;  // |lambda - alpha e^(-lambda tau) - beta|
};

/// Candidate delays at which the upper equilibrium can change stability:
/// tau_n = (2n+1) pi x* / (2 mu^2 |1 - 3 x*^4|) = (2n+1) pi / (2 omega),
/// with crossing frequency omega = |alpha|.
struct SwitchingTimeSequence {
    double mu = 0.0;
    double x_star = 0.0;
    double omega = 0.0;
    std::vector<double> taus;
};

enum class StabilityVerdict { stable, marginal, unstable };

std::string to_string(StabilityVerdict verdict);

/// (alpha, beta) at an equilibrium of the scaled system:
/// x_E = 0 gives (0, -mu); a positive equilibrium gives
/// ((mu^2/x_E)(1 - 3 x_E^4), 0) using f(x_E) = mu.
/// Rejects x_E whose equilibrium residual |x_E/(1+x_E^4) - mu| exceeds 1e-8.
LinearizationCoefficients linearize(double x_e, double mu);

/// Stability of the upper equilibrium in the ODE limit: x* > 3^(-1/4).
/// Always true inside the existence window.
bool tau_zero_stable(double x_star);

/// The first n_max + 1 candidate switching delays for the upper equilibrium.
/// Throws std::domain_error when no positive equilibrium exists.
SwitchingTimeSequence switching_times(double mu, int n_max);

struct RootSearchOptions {
    double re_lo = -5.0;
    double re_hi = 2.0;
    int re_seeds = 15;
    int n_guess = 8;  // imaginary seed rows span [0, (2 n_guess + 1) pi / max(tau, 1)]
    int max_iterations = 100;
    double residual_tol = 1e-10;
    double merge_tol = 1e-6;
};

/// Rightmost root of lambda = alpha e^(-lambda tau) + beta, by Newton
/// iteration from a grid of complex seeds; duplicates within merge_tol are
/// collapsed and the root of maximal real part wins (ties: smaller |Im|).
/// alpha == 0 and tau == 0 are returned in closed form.
/// Throws std::runtime_error carrying the best residual when no seed converges.
CharacteristicRoot dominant_root(const LinearizationCoefficients& coeffs, double tau,
                                 const RootSearchOptions& options = {});

/// Verdict for the upper equilibrium at the given delay, from the sign of
/// the dominant root's real part (marginal band |Re| < 1e-8).
StabilityVerdict crossing_check(double mu, double tau);

}  // namespace tcelldyn
