#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "dcurve/converse.hpp"
#include "dcurve/cost.hpp"
#include "dcurve/distribution.hpp"
#include "dcurve/noise.hpp"

namespace dcurve {

struct SimConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    unsigned threads = 0;  // 0 = hardware default; result is thread-count independent
};

struct Estimate {
    double value = 0.0;
    std::optional<double> se;                      // unavailable for trials = 1
    std::optional<std::pair<double, double>> ci95;  // exact binomial, Bernoulli stats only
};

/// Monte Carlo output: named point estimates with standard errors, the
/// analytic targets they are measured against, and the echoed config.
struct SimReport {
    std::string scheme;
    nlohmann::json config;
    std::map<std::string, Estimate> estimates;
    std::map<std::string, double> targets;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;

    /// `with_timing = false` drops the wall-time field, leaving only
    /// run-deterministic content (used by the determinism checks).
    nlohmann::json to_json(bool with_timing = true) const;
};

/// Binary relay cascade: mu = 4 sqrt(log n), X_1 = mu 1{W >= Qinv(mu^-p)},
/// relays X_{k+1} = mu 1{Y_k >= mu/2}. Estimates the end-to-end flip
/// probability, the induced T-information lower bound, the correlation of
/// the conditional-mean decoder, and the maximum per-stage p-th moment.
SimReport simulate_relay_binary(std::size_t n, double p_exp, const SimConfig& cfg);

/// Amplify-and-forward chain with per-stage power E: estimates
/// rho^2(X_0, X_{n+1}) against sigma0^2/(1+sigma0^2) (E/(1+E))^n.
SimReport simulate_relay_linear(double sigma0_sq, double E, std::size_t n, const SimConfig& cfg);

/// Broadcast over the depth-n binary tree using a TreeDesign; estimates the
/// conditional spin-sum mean, the spin-sum second moment, per-level
/// marginals, and the sign-test error.
SimReport simulate_tree(const TreeDesign& design, std::size_t depth, const SimConfig& cfg);

/// Deterministic experiment: S_n a normalized Rademacher sum (binomial
/// atoms), exact TV(P_{S_n} * N(0, sigma^2), N(0, 1 + sigma^2)) via
/// sign-crossing quadrature, exact W1(P_{S_n}, N(0,1)) via closed-form CDF
/// integration, and the smoothed-CLT bound chain check.
struct CltExact {
    double tv_exact;
    double w1_exact;
    bool bound_chain_ok;
};
CltExact clt_tv_exact(std::size_t n, double sigma);

/// Draws seeded discrete pairs in G_a, convolves them with the noise, and
/// verifies E_gamma contraction against the curve bound at budget
/// a (gamma ^ 1) over the gamma grid; reports the worst violation.
SimReport verify_mate_contraction(std::size_t pairs, const NoiseModel& noise,
                                  const CostFunction& cost, double a,
                                  std::span<const double> gamma_grid, const SimConfig& cfg);

/// Evaluates the two-atom witness pair before/after Gaussian smoothing for
/// each q; the divergence ratio must increase toward 1 as q decreases.
SimReport renyi_noncontraction_probe(double alpha, double t, double a,
                                     std::span<const double> q_seq);

}  // namespace dcurve
