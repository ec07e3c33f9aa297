#include "tcelldyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "tcelldyn/equilibria.hpp"
#include "tcelldyn/model.hpp"

namespace tcelldyn {

std::string to_string(StabilityVerdict verdict) {
    switch (verdict) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::marginal: return "marginal";
        case StabilityVerdict::unstable: return "unstable";
    }
    return "unknown";
}

LinearizationCoefficients linearize(double x_e, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("linearize: mu must be > 0");
    if (!(x_e >= 0.0)) throw std::invalid_argument("linearize: x_e must be >= 0");
    if (x_e == 0.0) return {0.0, -mu, 0.0};

    // The simplified alpha formula below substitutes f(x_e) = mu, so x_e
    // must actually be an equilibrium.
    const double x2 = x_e * x_e;
    const double x4 = x2 * x2;
    const double residual = std::abs(x_e / (1.0 + x4) - mu);
    if (residual > 1e-8)
        throw std::invalid_argument("linearize: x_e is not an equilibrium for this mu");

    const double alpha = mu * mu / x_e * (1.0 - 3.0 * x4);
    return {alpha, 0.0, x_e};
}

bool tau_zero_stable(double x_star) {
    return x_star > kFeedbackArgmax;
}

SwitchingTimeSequence switching_times(double mu, int n_max) {
    if (n_max < 0) throw std::invalid_argument("switching_times: n_max must be >= 0");
    const EquilibriumSet set = find_equilibria(mu);
    if (set.regime != EquilibriumRegime::three_equilibria || !set.x_star)
        throw std::domain_error("switching_times: no positive equilibrium");

    const LinearizationCoefficients coeffs = linearize(*set.x_star, mu);
    const double omega = std::abs(coeffs.alpha);  // crossing frequency
    SwitchingTimeSequence seq;
    seq.mu = mu;
    seq.x_star = *set.x_star;
    seq.omega = omega;
    seq.taus.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        seq.taus.push_back((2.0 * n + 1.0) * std::numbers::pi / (2.0 * omega));
    return seq;
}

namespace {

using Complex = std::complex<double>;

struct NewtonResult {
    Complex root;
    double residual;
    bool converged;
};

NewtonResult newton_from(Complex lambda, double alpha, double beta, double tau,
                         const RootSearchOptions& opt) {
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Complex e = std::exp(-lambda * tau);
        const Complex g = lambda - alpha * e - beta;
        residual = std::abs(g);
        if (residual < opt.residual_tol) return {lambda, residual, true};
        const Complex gp = 1.0 + alpha * tau * e;
        if (std::abs(gp) < 1e-14) break;
        lambda -= g / gp;
        if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) break;
        if (std::abs(lambda) > 1e6) break;
    }
    const Complex g = lambda - alpha * std::exp(-lambda * tau) - beta;
    return {lambda, std::abs(g), std::abs(g) < opt.residual_tol};
}

}  // namespace

CharacteristicRoot dominant_root(const LinearizationCoefficients& coeffs, double tau,
                                 const RootSearchOptions& options) {
    if (!(tau >= 0.0)) throw std::invalid_argument("dominant_root: tau must be >= 0");
    const double alpha = coeffs.alpha;
    const double beta = coeffs.beta;

    // alpha = 0: lambda = beta for every tau. tau = 0: the exponential is 1.
    if (alpha == 0.0) return {beta, 0.0, 0.0};
    if (tau == 0.0) return {alpha + beta, 0.0, 0.0};

    const double pi = std::numbers::pi;
    const double im_max = (2.0 * options.n_guess + 1.0) * pi / std::max(tau, 1.0);

    std::vector<Complex> seeds;
    const int n_im = 2 * (options.n_guess + 1);
    for (int i = 0; i < options.re_seeds; ++i) {
        const double re = options.re_lo + (options.re_hi - options.re_lo) * i /
                                              std::max(options.re_seeds - 1, 1);
        for (int k = 0; k < n_im; ++k)
            seeds.emplace_back(re, im_max * k / std::max(n_im - 1, 1));
    }
    // Candidate crossing frequencies (2k+1) pi / (2 tau) make good seeds for
    // near-imaginary roots.
    for (int k = 0; k <= options.n_guess; ++k)
        seeds.emplace_back(0.0, (2.0 * k + 1.0) * pi / (2.0 * tau));

    std::vector<Complex> roots;
    double best_residual = std::numeric_limits<double>::infinity();
    for (const Complex& seed : seeds) {
        const NewtonResult result = newton_from(seed, alpha, beta, tau, options);
        best_residual = std::min(best_residual, result.residual);
        if (!result.converged) continue;
        // Conjugate representative.
        const Complex canonical(result.root.real(), std::abs(result.root.imag()));
        bool duplicate = false;
        for (const Complex& r : roots)
            if (std::abs(r - canonical) < options.merge_tol) {
                duplicate = true;
                break;
            }
        if (!duplicate) roots.push_back(canonical);
    }
    if (roots.empty())
        throw std::runtime_error("dominant_root: no seed converged (best residual " +
                                 std::to_string(best_residual) + ")");

    Complex best = roots.front();
    for (const Complex& r : roots) {
        if (r.real() > best.real() + 1e-12 ||
            (std::abs(r.real() - best.real()) <= 1e-12 && std::abs(r.imag()) < std::abs(best.imag())))
            best = r;
    }
    const double residual = std::abs(best - alpha * std::exp(-best * tau) - beta);
    return {best.real(), best.imag(), residual};
}

StabilityVerdict crossing_check(double mu, double tau) {
    const EquilibriumSet set = find_equilibria(mu);
    if (!set.x_star) throw std::domain_error("crossing_check: no positive equilibrium");
    const CharacteristicRoot root = dominant_root(linearize(*set.x_star, mu), tau);
    if (std::abs(root.real_part) < 1e-8) return StabilityVerdict::marginal;
    return root.real_part < 0.0 ? StabilityVerdict::stable : StabilityVerdict::unstable;
}

}  // namespace tcelldyn
