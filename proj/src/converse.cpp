#include "dcurve/converse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcurve/curve.hpp"
#include "dcurve/math.hpp"
#include "dcurve/quadrature.hpp"

namespace dcurve {

namespace {

void validate_decrement_map(const std::function<double(double)>& h) {
    // h may round to zero near t = 0 (the iteration cannot reach that region
    // either); it must stay nonnegative, below the diagonal, nondecreasing,
    // and positive at t = 1.
    double prev = -1.0;
    for (int i = 1; i <= 1000; ++i) {
        const double t = static_cast<double>(i) / 1000.0;
        const double v = h(t);
        if (!(v >= 0.0)) {
            throw std::domain_error("rate lemma: h must be nonnegative on (0,1]");
        }
        if (v > t * (1.0 + 1e-9)) {
            throw std::domain_error("rate lemma: h(t) must not exceed t");
        }
        if (v + 1e-12 < prev) {
            throw std::domain_error("rate lemma: h must be nondecreasing");
        }
        prev = v;
    }
    if (!(h(1.0) > 0.0)) {
        throw std::domain_error("rate lemma: h must be strictly positive at t = 1");
    }
}

/// Cumulative table for G(t) = int_t^1 1/h on geometrically spaced knots,
/// extended downward on demand. The integrand can grow as fast as
/// exp(c/t), so panels shrink geometrically and each is handled by GL15.
class RateBoundInverter {
  public:
    explicit RateBoundInverter(std::function<double(double)> h) : h_(std::move(h)) {
        knots_.push_back(1.0);
        cum_.push_back(0.0);
    }

    double g_of(double t) {
        extend_to(t);
        const auto it = std::lower_bound(knots_.begin(), knots_.end(), t, std::greater<>());
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        if (i >= knots_.size()) i = knots_.size() - 1;
        // knots_[i] <= t <= knots_[i-1]
        if (knots_[i] == t) return cum_[i];
        return cum_[i] - panel(knots_[i], t);
    }

    /// G^{-1}(y): the t with G(t) = y, to absolute tolerance 1e-12.
    double inverse(double y) {
        if (y <= 0.0) return 1.0;
        std::size_t i = 1;
        while (true) {
            extend_index(i);
            if (cum_[i] >= y) break;
            if (knots_[i] < 1e-305) return knots_[i];  // bound saturates at the representable floor
            ++i;
        }
        double lo = knots_[i];      // G(lo) >= y
        double hi = knots_[i - 1];  // G(hi) <= y
        double g_hi = cum_[i - 1];  // G at the current hi endpoint
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g_mid = g_hi + panel(mid, hi);
            if (g_mid >= y) {
                lo = mid;
            } else {
                hi = mid;
                g_hi = g_mid;
            }
        }
        return 0.5 * (lo + hi);
    }

  private:
    double panel(double a, double b) const {  // int_a^b 1/h, a < b
        const auto f = [this](double u) { return 1.0 / h_(u); };
        // Subdivide so that each piece sees bounded relative variation.
        double acc = 0.0;
        double x = a;
        while (x < b) {
            double step = std::max(x * 0.01, (b - a) * 1e-6);
            double nx = std::min(x + step, b);
            acc += gl15(f, x, nx);
            x = nx;
        }
        return acc;
    }

    void extend_index(std::size_t i) {
        while (knots_.size() <= i) {
            const double prev = knots_.back();
            const double next = prev / kRatio;
            cum_.push_back(cum_.back() + panel(next, prev));
            knots_.push_back(next);
        }
    }

    void extend_to(double t) {
        while (knots_.back() > t && knots_.back() > 1e-305) {
            extend_index(knots_.size());
        }
    }

    static constexpr double kRatio = 1.05;

    std::function<double(double)> h_;
    std::vector<double> knots_;  // descending from 1
    std::vector<double> cum_;    // G at knots
};

}  // namespace

double rate_lemma_bound(const std::function<double(double)>& h, double n) {
    if (!(n >= 1.0)) throw std::domain_error("rate_lemma_bound: n must be >= 1");
    validate_decrement_map(h);
    if (n == 1.0) return 1.0;
    RateBoundInverter inv(h);
    return inv.inverse(n - 1.0);
}

DecayTrajectory t_decay(const NoiseModel& noise, const CostFunction& cost, double budget,
                        std::size_t n_max, bool with_rate_bound) {
    if (n_max < 1) throw std::invalid_argument("t_decay: n_max must be >= 1");
    if (!(budget > 0.0)) throw std::invalid_argument("t_decay: budget must be > 0");
    const DobrushinCurve curve(noise, cost, 1.0);

    DecayTrajectory out;
    out.budget = budget;
    out.t.resize(n_max);
    double t = 1.0;
    out.t[0] = t;
    for (std::size_t n = 1; n < n_max; ++n) {
        t = curve.upper(t);
        out.t[n] = t;
    }

    if (with_rate_bound && n_max >= 2 && curve.upper_gap(1.0) > 0.0) {
        // No rate bound exists when the curve does not contract at all
        // (compact-support noise); the checkpoints stay empty then.
        RateBoundInverter inv([&curve](double u) { return curve.upper_gap(u); });
        std::size_t n = 2;
        while (n <= n_max) {
            out.checkpoint_n.push_back(n);
            out.checkpoint_rate_bound.push_back(inv.inverse(static_cast<double>(n) - 1.0));
            const auto next = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * 1.25));
            n = std::max(n + 1, next);
        }
        if (out.checkpoint_n.back() != n_max) {
            out.checkpoint_n.push_back(n_max);
            out.checkpoint_rate_bound.push_back(inv.inverse(static_cast<double>(n_max) - 1.0));
        }
    }
    return out;
}

double mi_bound_finite(double T, std::size_t alphabet_size) {
    if (!(T >= 0.0 && T <= 1.0)) throw std::domain_error("mi_bound_finite: T must lie in [0,1]");
    if (alphabet_size < 2) throw std::domain_error("mi_bound_finite: alphabet size must be >= 2");
    return std::log(static_cast<double>(alphabet_size - 1)) * T + binary_entropy(T);
}

Chi2TvBound chi2_tv_bound(double T, double p_min) {
    if (!(p_min > 0.0 && p_min <= 1.0)) {
        throw std::domain_error("chi2_tv_bound: p_min must lie in (0,1]");
    }
    if (T < 0.0) throw std::domain_error("chi2_tv_bound: T must be >= 0");
    const double c = T / p_min;
    return {c, std::sqrt(c)};
}

double mi_bound_chain(std::size_t d, double E, double n, double T_bound) {
    if (d < 1) throw std::domain_error("mi_bound_chain: d must be >= 1");
    if (!(E > 0.0)) throw std::domain_error("mi_bound_chain: E must be > 0");
    if (!(n >= 2.0)) throw std::domain_error("mi_bound_chain: n must be >= 2");
    if (!(T_bound >= 0.0 && T_bound <= 1.0)) {
        throw std::domain_error("mi_bound_chain: T_bound must lie in [0,1]");
    }
    const double dd = static_cast<double>(d);
    const double logn = std::log(n);
    const double u = std::sqrt(logn);
    const double eps_sq = dd * dd * E / logn;
    const double eps = std::sqrt(eps_sq);
    return 0.5 * dd * std::log1p(eps_sq / dd) +
           dd * dd * E / (2.0 * u * u) * std::log1p(u * u / dd) +
           T_bound * dd * std::log1p(2.0 * u / eps) + binary_entropy(std::min(T_bound, 1.0));
}

double corr_bound_gaussian(double mutual_info) {
    if (mutual_info < 0.0) throw std::domain_error("corr_bound_gaussian: I must be >= 0");
    return std::min(1.0, -std::expm1(-2.0 * mutual_info));
}

double corr_bound_moment(double T, double q, double norm_2q) {
    if (!(T >= 0.0 && T <= 1.0)) throw std::domain_error("corr_bound_moment: T must lie in [0,1]");
    if (!(q > 1.0)) throw std::domain_error("corr_bound_moment: q must be > 1");
    if (!(norm_2q > 0.0)) throw std::domain_error("corr_bound_moment: ||W||_{2q} must be > 0");
    return std::min(1.0, 4.0 * std::pow(T, 1.0 - 1.0 / q) * norm_2q * norm_2q);
}

double corr_bound_subgauss(double T, double psi2_norm) {
    const double t_cap = std::exp(-2.0 / std::exp(1.0));
    if (!(T > 0.0 && T < t_cap)) {
        throw std::domain_error("corr_bound_subgauss: requires 0 < T < e^{-2/e} (~0.479)");
    }
    if (!(psi2_norm > 0.0)) throw std::domain_error("corr_bound_subgauss: psi2 norm must be > 0");
    return std::min(1.0, 8.0 * psi2_norm * psi2_norm * T * std::log(1.0 / T));
}

CircuitBound circuit_error_bound(double snr, std::size_t k) {
    if (!(snr > 0.0)) throw std::domain_error("circuit_error_bound: SNR must be > 0");
    if (k < 1) throw std::domain_error("circuit_error_bound: k must be >= 1");
    const CostFunction cost = CostFunction::power(2.0);
    const auto map = [&](double t) {
        return ftv_gaussian(snr, std::min(1.0, static_cast<double>(k) * t), cost);
    };
    if (k == 1) {
        // F(t) < t strictly for all t > 0, so the only fixed point is 0.
        return {0.0, 0.5};
    }
    double t = 1.0;
    for (int it = 0; it < 200000; ++it) {
        const double next = map(t);
        if (std::abs(next - t) < 1e-12) {
            t = next;
            break;
        }
        t = next;
    }
    return {t, 0.5 * (1.0 - t)};
}

TreeDesign tree_design(double mu, double t) {
    if (!(mu > 0.0)) throw std::domain_error("tree_design: mu must be > 0");
    if (!(t > 0.5 && t < 1.0)) throw std::domain_error("tree_design: t must lie in (1/2, 1)");
    TreeDesign d;
    d.mu = mu;
    d.t = t;
    const double q_t = gauss_q(t * mu);
    const double q_lo = gauss_q((1.0 - t) * mu);
    const double q_hi = gauss_q((1.0 + t) * mu);
    d.p = q_t / (q_lo + 2.0 * q_t - q_hi);
    d.theta = 1.0 - q_lo - q_hi;
    d.energy_used = 2.0 * d.p * mu * mu;
    if (2.0 * d.theta * d.theta > 1.0) {
        d.tv_lower = 2.0 * d.p * (1.0 - 1.0 / (4.0 * d.theta * d.theta));
    }
    return d;
}

TreeMoments tree_moments(const TreeDesign& design, std::size_t n) {
    if (n < 1) throw std::domain_error("tree_moments: depth must be >= 1");
    const double p = design.p;
    const double theta = design.theta;
    const double two_theta = 2.0 * theta;
    TreeMoments m;
    m.mean_pm = 2.0 * p * std::pow(two_theta, static_cast<double>(n - 1));

    // Exact pairwise second moment. Leaves j < j' at depth n with common
    // ancestor at depth u contribute theta^{2(n-u)} 2p each; there are
    // 2^{u-1} * 4^{n-u-1} such pairs.
    double cross = 0.0;
    for (std::size_t u = 1; u < n; ++u) {
        const double pairs =
            std::pow(2.0, static_cast<double>(u - 1)) * std::pow(4.0, static_cast<double>(n - u - 1));
        cross += pairs * std::pow(theta, 2.0 * static_cast<double>(n - u)) * 2.0 * p;
    }
    m.second_moment_exact = std::pow(2.0, static_cast<double>(n - 1)) * 2.0 * p + 2.0 * cross;

    if (2.0 * theta * theta > 1.0) {
        m.second_moment_ub = std::pow(2.0, static_cast<double>(n)) * p +
                             2.0 * p * std::pow(two_theta, 2.0 * static_cast<double>(n)) /
                                 (two_theta * two_theta - 1.0);
        const double num = 2.0 * m.mean_pm;  // E[S|+1] - E[S|-1]
        m.tv_lb = std::min(1.0, num * num / (4.0 * m.second_moment_ub));
    } else {
        m.second_moment_ub = std::numeric_limits<double>::quiet_NaN();
    }
    return m;
}

double linear_control_corr(double sigma0_sq, double E, std::size_t n) {
    if (!(sigma0_sq > 0.0)) throw std::domain_error("linear_control_corr: sigma0^2 must be > 0");
    if (!(E > 0.0)) throw std::domain_error("linear_control_corr: E must be > 0");
    if (n < 1) throw std::domain_error("linear_control_corr: n must be >= 1");
    return sigma0_sq / (1.0 + sigma0_sq) * std::pow(E / (1.0 + E), static_cast<double>(n));
}

double awgn_capacity(std::size_t d, double P) {
    if (d < 1) throw std::domain_error("awgn_capacity: d must be >= 1");
    if (P < 0.0) throw std::domain_error("awgn_capacity: P must be >= 0");
    const double dd = static_cast<double>(d);
    return 0.5 * dd * std::log1p(P / dd);
}

double clt_bound(std::size_t n, double sigma, double third_abs_moment) {
    if (n < 1) throw std::domain_error("clt_bound: n must be >= 1");
    if (!(sigma > 0.0)) throw std::domain_error("clt_bound: sigma must be > 0");
    if (!(third_abs_moment >= 1.0)) {
        throw std::domain_error("clt_bound: E|X|^3 must be >= 1 for unit-variance laws");
    }
    return 3.0 * third_abs_moment /
           std::sqrt(2.0 * kPi * sigma * sigma * static_cast<double>(n));
}

}  // namespace dcurve
