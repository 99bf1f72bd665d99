#include "dcurve/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "dcurve/converse.hpp"
#include "dcurve/curve.hpp"
#include "dcurve/divergence.hpp"
#include "dcurve/math.hpp"
#include "dcurve/mc.hpp"
#include "dcurve/quadrature.hpp"
#include "dcurve/rng.hpp"

namespace dcurve {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

NoiseModel sampled_gaussian_grid(double sigma, double half_span, double step) {
    const auto n = static_cast<std::size_t>(std::llround(2.0 * half_span / step)) + 1;
    std::vector<double> xs = linspace(-half_span, half_span, n);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fs[i] = gauss_pdf(xs[i] / sigma) / sigma;
    }
    const double mass = trapezoid(xs, fs);
    for (double& v : fs) v /= mass;
    return NoiseModel::gridded(std::move(xs), std::move(fs));
}

CriterionResult theta_closed_vs_grid(bool fast) {
    CriterionResult r{"theta-closed-vs-grid", false, "", 0.0};
    const NoiseModel exact = NoiseModel::gaussian(1.0);
    const NoiseModel grid = sampled_gaussian_grid(1.0, 8.5, 1e-3);
    const double x_step = fast ? 1e-2 : 1e-3;
    const auto count = static_cast<std::size_t>(std::llround(10.0 / x_step));
    double worst = 0.0;
    for (std::size_t i = 0; i <= count; ++i) {
        const double x = x_step * static_cast<double>(i);
        worst = std::max(worst, std::abs(theta(exact, x) - theta(grid, x)));
    }
    r.passed = worst <= 1e-6;
    r.detail = fmt("max |closed - quadrature| = %.3g (tol 1e-6)", worst);
    return r;
}

CriterionResult curve_sandwich(bool) {
    CriterionResult r{"curve-sandwich-equality", false, "", 0.0};
    const CostFunction cost = CostFunction::power(2.0);
    const NoiseModel models[] = {NoiseModel::gaussian(1.0), NoiseModel::laplace(1.0),
                                 NoiseModel::uniform(1.0)};
    double worst_gap = 0.0;
    bool dp_ok = true;
    for (const auto& noise : models) {
        for (double a : {0.5, 1.0, 4.0}) {
            const DobrushinCurve curve(noise, cost, a);
            for (int i = 1; i <= 1000; ++i) {
                const double t = static_cast<double>(i) / 1000.0;
                const double up = curve.upper(t);
                const double lo = curve.lower(t);
                worst_gap = std::max(worst_gap, std::abs(up - lo));
                if (up > t) dp_ok = false;
                if (t >= 1e-3 && up >= t) {
                    // Strictness is required wherever the contraction
                    // criterion is unsaturated at this radius (compact
                    // support and fully-resolved tails are exempt).
                    const auto rep = contraction_criterion(noise, curve.shift_at(t));
                    if (!rep.saturated) dp_ok = false;
                }
            }
        }
    }
    r.passed = worst_gap <= 1e-9 && dp_ok;
    r.detail = fmt("max |upper - lower| = %.3g (tol 1e-9), data processing ", worst_gap) +
               (dp_ok ? "ok" : "VIOLATED");
    return r;
}

CriterionResult scaling_law(bool) {
    CriterionResult r{"gaussian-scaling-law", false, "", 0.0};
    const CostFunction cost = CostFunction::power(2.0);
    TrialRng rng(20240817, 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = 1e-3 + (1.0 - 1e-3) * rng.uniform();
        const double a = 0.05 + 5.0 * rng.uniform();
        const double alpha = rng.uniform() * std::min(1.0 / t, 2.0);
        if (alpha <= 0.0) continue;
        const double lhs = ftv_gaussian(alpha * a, alpha * t, cost);
        const double rhs = alpha * ftv_gaussian(a, t, cost);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    r.passed = worst <= 1e-12;
    r.detail = fmt("max |F(at, aa) - a F(t,a)| = %.3g (tol 1e-12)", worst);
    return r;
}

CriterionResult two_point_achievability(bool) {
    CriterionResult r{"two-point-achievability", false, "", 0.0};
    struct Case {
        NoiseModel noise;
        double t, a;
    };
    const Case cases[] = {
        {NoiseModel::gaussian(1.0), 0.5, 1.0},  {NoiseModel::gaussian(1.0), 0.1, 1.0},
        {NoiseModel::gaussian(2.0), 0.3, 0.5},  {NoiseModel::gaussian(1.0), 0.8, 4.0},
        {NoiseModel::laplace(1.0), 0.5, 1.0},   {NoiseModel::laplace(0.5), 0.2, 0.5},
        {NoiseModel::laplace(2.0), 0.7, 2.0},   {NoiseModel::uniform(4.0), 0.5, 0.25},
        {NoiseModel::uniform(8.0), 0.3, 0.5},   {NoiseModel::exponential(1.0), 0.4, 1.0},
    };
    const CostFunction cost = CostFunction::power(2.0);
    double worst = 0.0;
    for (const auto& c : cases) {
        const double x = cost.inverse(c.a / c.t);
        const Distribution p = Distribution::discrete({{0.0, 1.0 - c.t}, {x, c.t}});
        const Distribution q = Distribution::discrete({{0.0, 1.0 - c.t}, {-x, c.t}});
        const double tv_num = tv(convolve(p, c.noise), convolve(q, c.noise));
        const DobrushinCurve curve(c.noise, cost, c.a);
        worst = std::max(worst, std::abs(tv_num - curve.lower(c.t)));
    }
    r.passed = worst <= 1e-4;
    r.detail = fmt("max |TV(conv pair) - lower bound| = %.3g (tol 1e-4)", worst);
    return r;
}

CriterionResult integral_representation_anchors(bool) {
    CriterionResult r{"integral-representation", false, "", 0.0};
    const Distribution p = Distribution::gaussian(1.0, 1.0);
    const Distribution q = Distribution::gaussian(0.0, 1.0);
    const double chi2 = integral_representation(p, q, DivergenceKind::chi2());
    const double kl = integral_representation(p, q, DivergenceKind::kl());
    const double h2 = integral_representation(p, q, DivergenceKind::hellinger2());
    const double e_chi2 = std::abs(chi2 - (std::exp(1.0) - 1.0));
    const double e_kl = std::abs(kl - 0.5);
    const double e_h2 = std::abs(h2 - 2.0 * (1.0 - std::exp(-0.125)));
    const double worst = std::max({e_chi2, e_kl, e_h2});
    r.passed = worst <= 1e-4;
    r.detail = fmt("errors chi2 %.3g, kl %.3g, h2 %.3g (tol 1e-4)", e_chi2, e_kl, e_h2);
    return r;
}

CriterionResult mate_contraction(bool) {
    CriterionResult r{"e-gamma-contraction", false, "", 0.0};
    const double gammas[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    SimConfig cfg;
    cfg.seed = 12345;
    const SimReport rep = verify_mate_contraction(20, NoiseModel::gaussian(1.0),
                                                  CostFunction::power(2.0), 1.0, gammas, cfg);
    const double violations = rep.estimates.at("violations_above_1e-6").value;
    r.passed = violations == 0.0;
    r.detail = fmt("violations above 1e-6: %.0f, max excess %.3g", violations,
                   rep.estimates.at("max_violation").value);
    return r;
}

CriterionResult rate_lemma_check(bool) {
    CriterionResult r{"rate-lemma", false, "", 0.0};
    double t = 1.0;
    bool ok = true;
    for (std::size_t n = 1; n <= 1000000; ++n) {
        if (!(t <= 1.0 / static_cast<double>(n))) {
            ok = false;
            break;
        }
        t = t - t * t;
    }
    const auto h = [](double u) { return u * u; };
    const double b10 = rate_lemma_bound(h, 10.0);
    const double b1000 = rate_lemma_bound(h, 1000.0);
    ok = ok && std::abs(b10 - 0.1) <= 1e-9 && std::abs(b1000 - 1e-3) <= 1e-9;
    r.passed = ok;
    r.detail = fmt("G-inverse errors %.2g, %.2g; iterate-vs-1/n ", std::abs(b10 - 0.1),
                   std::abs(b1000 - 1e-3)) +
               (ok ? "ok" : "VIOLATED");
    return r;
}

CriterionResult decay_rate_orders(bool fast) {
    CriterionResult r{"decay-rate-orders", false, "", 0.0};
    const std::size_t n_max = fast ? 100000 : 1000000;
    const double n_lo = 1000.0;
    struct Fam {
        CostFunction cost;
        std::function<double(double)> rate;
        const char* name;
    };
    const Fam fams[] = {
        {CostFunction::power(2.0), [](double n) { return 1.0 / std::log(n); }, "power2"},
        {CostFunction::sub_exp(1.0),
         [](double n) { return std::exp(-std::sqrt(2.0 * std::log(n))); }, "subexp1"},
        {CostFunction::sub_gauss(1.0), [](double n) { return std::pow(n, -2.0); }, "subgauss1"},
    };
    std::ostringstream detail;
    bool ok = true;
    for (const auto& fam : fams) {
        const DecayTrajectory traj =
            t_decay(NoiseModel::gaussian(1.0), fam.cost, 1.0, n_max, false);
        // log t_n regressed on log(1/rate(n)) over log-spaced n.
        std::vector<double> xs, ys;
        for (double n = n_lo; n <= static_cast<double>(n_max) * 1.0000001; n *= 1.2) {
            const auto ni = static_cast<std::size_t>(std::llround(n));
            xs.push_back(std::log(1.0 / fam.rate(static_cast<double>(ni))));
            ys.push_back(std::log(traj.t[ni - 1]));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        if (!(std::abs(slope + 1.0) <= 0.2)) ok = false;
        detail << fam.name << " slope " << fmt("%.3f ", slope);
    }
    r.passed = ok;
    r.detail = detail.str() + "(each within 20% of -1)";
    return r;
}

CriterionResult discrete_coefficients(bool) {
    CriterionResult r{"discrete-coefficients", false, "", 0.0};
    const ChannelMatrix bsc({{0.9, 0.1}, {0.1, 0.9}});
    const double eta_tv = dobrushin_coefficient(bsc);
    const double input[] = {0.5, 0.5};
    const double eta_chi2 = eta_chi2_discrete(input, bsc);
    const double e1 = std::abs(eta_tv - 0.8);
    const double e2 = std::abs(eta_chi2 - 0.64);
    r.passed = e1 <= 1e-12 && e2 <= 1e-12;
    r.detail = fmt("BSC(0.1): |eta_tv - 0.8| = %.2g, |eta_chi2 - 0.64| = %.2g (tol 1e-12)", e1, e2);
    return r;
}

CriterionResult circuit_fixed_point(bool) {
    CriterionResult r{"circuit-fixed-point", false, "", 0.0};
    const CostFunction cost = CostFunction::power(2.0);
    bool ok = true;
    double worst_res = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double snr = 0.1 + (10.0 - 0.1) * static_cast<double>(i) / 49.0;
        const CircuitBound b1 = circuit_error_bound(snr, 1);
        if (!(std::abs(b1.t_star) <= 1e-9)) ok = false;
    }
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
        const double snr = 0.1 + (10.0 - 0.1) * static_cast<double>(i) / 49.0;
        const CircuitBound b = circuit_error_bound(snr, 3);
        if (b.t_star < prev - 1e-12) ok = false;
        prev = b.t_star;
        const double mapped =
            ftv_gaussian(snr, std::min(1.0, 3.0 * b.t_star), cost);
        worst_res = std::max(worst_res, std::abs(mapped - b.t_star));
    }
    ok = ok && worst_res <= 1e-9;
    r.passed = ok;
    r.detail = fmt("t*_1 = 0, t*_3 monotone in SNR, max residual %.2g (tol 1e-9)", worst_res);
    return r;
}

CriterionResult relay_binary_gate(bool fast) {
    CriterionResult r{"relay-binary", false, "", 0.0};
    SimConfig cfg;
    cfg.seed = 7;
    cfg.trials = fast ? 20000 : 100000;
    const SimReport rep = simulate_relay_binary(100, 2.0, cfg);
    const Estimate& flip = rep.estimates.at("flip_prob");
    const Estimate& power = rep.estimates.at("power_max");
    const bool flip_ok = flip.value <= 0.01 + 3.0 * flip.se.value_or(0.0);
    const bool power_ok = power.value <= 2.0 + 3.0 * power.se.value_or(0.0);
    r.passed = flip_ok && power_ok;
    r.detail = fmt("flip %.4g (<= 0.01 + 3se), max power %.4g (<= 2 + 3se)", flip.value,
                   power.value);
    return r;
}

CriterionResult relay_linear_gate(bool fast) {
    CriterionResult r{"relay-linear", false, "", 0.0};
    SimConfig cfg;
    cfg.seed = 7;
    cfg.trials = fast ? 200000 : 1000000;
    const SimReport rep = simulate_relay_linear(1.0, 1.0, 5, cfg);
    const Estimate& rho_sq = rep.estimates.at("rho_sq");
    const double target = rep.targets.at("rho_sq");
    const double err = std::abs(rho_sq.value - target);
    r.passed = rho_sq.se && err <= 3.0 * *rho_sq.se;
    r.detail = fmt("|rho^2 - %.6f| = %.3g vs 3se = %.3g", target, err,
                   3.0 * rho_sq.se.value_or(0.0));
    return r;
}

CriterionResult tree_gate(bool) {
    CriterionResult r{"tree-broadcast", false, "", 0.0};
    SimConfig cfg;
    cfg.seed = 2;
    cfg.trials = 10000;
    const TreeDesign design = tree_design(10.0, 0.6);
    const SimReport rep = simulate_tree(design, 12, cfg);
    const Estimate& mean = rep.estimates.at("mean_given_plus");
    const double mean_target = rep.targets.at("mean_given_plus");
    bool ok = mean.se && std::abs(mean.value - mean_target) <= 3.0 * *mean.se;
    const Estimate& s2 = rep.estimates.at("second_moment");
    if (!(s2.se && std::abs(s2.value - rep.targets.at("second_moment")) <= 3.0 * *s2.se)) {
        ok = false;
    }
    double worst_marg = 0.0;
    for (int level = 1; level <= 12; ++level) {
        char name[32];
        std::snprintf(name, sizeof(name), "marginal_L%02d", level);
        const Estimate& m = rep.estimates.at(name);
        const double gap = std::abs(m.value - design.p);
        worst_marg = std::max(worst_marg, gap);
        if (!(m.se && gap <= 3.0 * *m.se)) ok = false;
    }
    r.passed = ok;
    r.detail = fmt("mean|+1 %.4g vs %.4g (3se %.3g), ", mean.value, mean_target,
                   3.0 * mean.se.value_or(0.0)) +
               fmt("worst marginal gap %.3g", worst_marg);
    return r;
}

CriterionResult smoothed_clt(bool) {
    CriterionResult r{"smoothed-clt", false, "", 0.0};
    const CltExact e = clt_tv_exact(100, 1.0);
    const double bound = clt_bound(100, 1.0, 1.0);
    const double smooth = e.w1_exact / std::sqrt(2.0 * kPi);
    const bool ok = e.tv_exact <= 0.1196827 && e.tv_exact <= smooth && e.bound_chain_ok &&
                    std::abs(bound - 0.1196827) <= 1e-6;
    r.passed = ok;
    r.detail = fmt("tv %.4g <= w1/sqrt(2pi) %.4g <= %.7f", e.tv_exact, smooth, bound);
    return r;
}

CriterionResult renyi_noncontraction(bool) {
    CriterionResult r{"renyi-noncontraction", false, "", 0.0};
    const double qs[] = {1e-2, 1e-3, 1e-4};
    const SimReport rep = renyi_noncontraction_probe(2.0, 0.1, 2.0, qs);
    const double r0 = rep.estimates.at("ratio_00").value;
    const double r1 = rep.estimates.at("ratio_01").value;
    const double r2 = rep.estimates.at("ratio_02").value;
    const bool ok = r2 >= 0.9 && r1 >= r0 - 1e-12 && r2 >= r1 - 1e-12;
    r.passed = ok;
    r.detail = fmt("ratios %.6f, %.9f, %.12f (monotone, last >= 0.9)", r0, r1, r2);
    return r;
}

CriterionResult determinism(bool fast) {
    CriterionResult r{"determinism", false, "", 0.0};
    const std::size_t scale = fast ? 5 : 1;
    bool ok = true;
    auto canonical = [](const SimReport& rep) { return rep.to_json(false).dump(); };
    {
        SimConfig a;
        a.seed = 7;
        a.trials = 100000 / scale;
        a.threads = 1;
        SimConfig b = a;
        b.threads = 4;
        ok = ok && canonical(simulate_relay_binary(100, 2.0, a)) ==
                       canonical(simulate_relay_binary(100, 2.0, b));
    }
    {
        SimConfig a;
        a.seed = 7;
        a.trials = 1000000 / scale;
        a.threads = 1;
        SimConfig b = a;
        b.threads = 4;
        ok = ok && canonical(simulate_relay_linear(1.0, 1.0, 5, a)) ==
                       canonical(simulate_relay_linear(1.0, 1.0, 5, b));
    }
    {
        SimConfig a;
        a.seed = 2;
        a.trials = 10000 / scale;
        a.threads = 1;
        SimConfig b = a;
        b.threads = 4;
        const TreeDesign d = tree_design(10.0, 0.6);
        ok = ok &&
             canonical(simulate_tree(d, 12, a)) == canonical(simulate_tree(d, 12, b));
    }
    r.passed = ok;
    r.detail = ok ? "reports byte-identical across thread counts"
                  : "thread count changed report bytes";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool fast) {
    using Runner = std::function<CriterionResult(bool)>;
    struct Entry {
        Runner fn;
        double time_limit_ms;
    };
    const Entry entries[] = {
        {theta_closed_vs_grid, 5000.0},
        {curve_sandwich, 60000.0},
        {scaling_law, 60000.0},
        {two_point_achievability, 60000.0},
        {integral_representation_anchors, 10000.0},
        {mate_contraction, 60000.0},
        {rate_lemma_check, 1000.0},
        {decay_rate_orders, 120000.0},
        {discrete_coefficients, 60000.0},
        {circuit_fixed_point, 60000.0},
        {relay_binary_gate, 30000.0},
        {relay_linear_gate, 30000.0},
        {tree_gate, 120000.0},
        {smoothed_clt, 10000.0},
        {renyi_noncontraction, 60000.0},
        {determinism, 240000.0},
    };
    std::vector<CriterionResult> results;
    for (const auto& e : entries) {
        const auto t0 = Clock::now();
        CriterionResult r = e.fn(fast);
        r.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (!fast && r.ms > e.time_limit_ms) {
            r.passed = false;
            r.detail += fmt(" [exceeded %.0f ms budget]", e.time_limit_ms);
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace dcurve
