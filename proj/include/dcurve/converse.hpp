#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dcurve/cost.hpp"
#include "dcurve/noise.hpp"

namespace dcurve {

/// Rate bound t_n <= G^{-1}(n-1) for the decrement iteration
/// t_{n+1} = t_n - h(t_n) from t_1 = 1, where G(t) = int_t^1 1/h.
/// h must be nondecreasing with 0 < h(t) <= t on (0,1] (validated on a
/// grid). G is computed by panelwise Gauss quadrature and inverted by
/// bisection to absolute tolerance 1e-12.
double rate_lemma_bound(const std::function<double(double)>& h, double n);

/// Decay of the T-information bound along a relay chain: the exact
/// iteration t_{n+1} = t_n theta_c(2 M^{-1}(1/t_n)) from t_1 = 1 (budget
/// normalized; the T-information bound at stage n is budget * t_n), plus
/// the rate-lemma bound at log-spaced checkpoints for cross-checking.
struct DecayTrajectory {
    double budget = 1.0;
    std::vector<double> t;  // t[k] = t_{k+1}, so t.front() = t_1 = 1

    std::vector<std::size_t> checkpoint_n;
    std::vector<double> checkpoint_rate_bound;

    double t_info_bound(std::size_t n) const { return budget * t.at(n - 1); }
};

DecayTrajectory t_decay(const NoiseModel& noise, const CostFunction& cost, double budget,
                        std::size_t n_max, bool with_rate_bound = true);

/// I(W;Y) <= log(m-1) T + h(T) in nats for an m-ary message.
double mi_bound_finite(double T, std::size_t alphabet_size);

struct Chi2TvBound {
    double chi2;     // T / p_min
    double maxcorr;  // sqrt of it, the S(W;Y) bound
};
Chi2TvBound chi2_tv_bound(double T, double p_min);

/// Mutual-information bound for the d-dimensional chain in its primitive
/// form with u = sqrt(log n) and eps^2 = d^2 E / log n; the T term comes
/// from a computed decay bound rather than an unspecified constant.
double mi_bound_chain(std::size_t d, double E, double n, double T_bound);

/// rho^2 <= 1 - exp(-2 I) for Gaussian W.
double corr_bound_gaussian(double mutual_info);
/// rho^2 <= 4 T^{1-1/q} ||W||_{2q}^2.
double corr_bound_moment(double T, double q, double norm_2q);
/// rho^2 <= 8 ||W||_{psi2}^2 T ln(1/T) (nats); requires T < e^{-2/e}.
double corr_bound_subgauss(double T, double psi2_norm);

/// Largest fixed point of t -> F_TV(k t ^ 1) for the Gaussian curve with
/// budget P, and the induced error lower bound (1 - t*)/2 for circuits of
/// noisy k-input gates.
struct CircuitBound {
    double t_star;
    double error_lb;
};
CircuitBound circuit_error_bound(double snr, std::size_t k);

/// Broadcast design on the binary tree: signal level mu, threshold fraction
/// t in (1/2, 1); p solves the marginal fixed-point equation, theta is the
/// per-link spin retention, energy_used = 2 p mu^2. tv_lower (the depth ->
/// infinity total-variation bound 2p(1 - 1/(4 theta^2))) is only available
/// when 2 theta^2 > 1.
struct TreeDesign {
    double mu;
    double t;
    double p;
    double theta;
    double energy_used;
    std::optional<double> tv_lower;
};
TreeDesign tree_design(double mu, double t);

/// Spin-sum moments at depth n: E[S_n | W = +1] = 2p (2 theta)^{n-1}, the
/// stated second-moment upper bound 2^n p + 2p (2 theta)^{2n} /
/// ((2 theta)^2 - 1), the exact pairwise second moment (ancestor-counted),
/// and the Cauchy-Schwarz TV lower bound mean^2 / E[S_n^2].
struct TreeMoments {
    double mean_pm;
    double second_moment_ub;
    double second_moment_exact;
    std::optional<double> tv_lb;
};
TreeMoments tree_moments(const TreeDesign& design, std::size_t n);

/// Squared correlation of the best linear controllers over n stages:
/// sigma0^2/(1+sigma0^2) (E/(1+E))^n.
double linear_control_corr(double sigma0_sq, double E, std::size_t n);

/// AWGN capacity (d/2) log(1 + P/d) in nats.
double awgn_capacity(std::size_t d, double P);

/// Smoothed-CLT bound 3 E|X1|^3 / sqrt(2 pi sigma^2 n).
double clt_bound(std::size_t n, double sigma, double third_abs_moment);

}  // namespace dcurve
