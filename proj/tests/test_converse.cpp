#include <doctest.h>

#include <cmath>

#include "dcurve/converse.hpp"
#include "dcurve/curve.hpp"
#include "dcurve/math.hpp"

using namespace dcurve;

TEST_CASE("rate lemma bound: analytic instances") {
    const auto sq = [](double t) { return t * t; };
    CHECK(rate_lemma_bound(sq, 1.0) == 1.0);
    CHECK(rate_lemma_bound(sq, 2.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rate_lemma_bound(sq, 10.0) == doctest::Approx(0.1).epsilon(1e-8));
    CHECK(rate_lemma_bound(sq, 1000.0) == doctest::Approx(1e-3).epsilon(1e-6));

    const auto lin = [](double t) { return t; };
    CHECK(rate_lemma_bound(lin, 5.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-8));

    CHECK_THROWS_AS(rate_lemma_bound([](double) { return -1.0; }, 5.0), std::domain_error);
    CHECK_THROWS_AS(rate_lemma_bound([](double t) { return 2.0 * t; }, 5.0), std::domain_error);
    CHECK_THROWS_AS(rate_lemma_bound([](double t) { return 0.2 - 0.1 * t; }, 5.0),
                    std::domain_error);
}

TEST_CASE("rate lemma dominates the iterated sequence statewise") {
    const auto sq = [](double t) { return t * t; };
    double t = 1.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        CHECK(t <= rate_lemma_bound(sq, static_cast<double>(n)) + 1e-12);
        t -= sq(t);
    }
}

TEST_CASE("t_decay trajectory") {
    const NoiseModel noise = NoiseModel::gaussian(1.0);
    const CostFunction cost = CostFunction::power(2.0);
    const DecayTrajectory traj = t_decay(noise, cost, 1.0, 2000);
    CHECK(traj.t.front() == 1.0);
    CHECK(traj.t_info_bound(1) == 1.0);
    for (std::size_t n = 1; n < traj.t.size(); ++n) {
        CHECK(traj.t[n] < traj.t[n - 1]);
        CHECK(traj.t[n] > 0.0);
    }
    // Rate-lemma bound dominates the iterate at every checkpoint.
    REQUIRE(!traj.checkpoint_n.empty());
    for (std::size_t i = 0; i < traj.checkpoint_n.size(); ++i) {
        const std::size_t n = traj.checkpoint_n[i];
        CHECK(traj.t[n - 1] <= traj.checkpoint_rate_bound[i] + 1e-10);
    }
    // Output scales linearly in the budget.
    const DecayTrajectory doubled = t_decay(noise, cost, 2.0, 50, false);
    for (std::size_t n = 1; n <= 50; ++n) {
        CHECK(doubled.t_info_bound(n) == doctest::Approx(2.0 * traj.t_info_bound(n)).epsilon(1e-15));
    }

    // Compact-support noise does not contract: the trajectory freezes at a
    // positive level and no rate bound is produced.
    const DecayTrajectory flat = t_decay(NoiseModel::uniform(1.0), cost, 1.0, 100);
    CHECK(flat.t.back() == 1.0);  // shift 2 sqrt(1/t) >= width for all t <= 1
    CHECK(flat.checkpoint_n.empty());
}

TEST_CASE("finite-alphabet mutual information bound") {
    CHECK(mi_bound_finite(0.0, 2) == 0.0);
    CHECK(mi_bound_finite(0.5, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(mi_bound_finite(0.1, 4) == doctest::Approx(0.4349442022582606).epsilon(1e-13));
    CHECK_THROWS_AS(mi_bound_finite(1.5, 2), std::domain_error);
    CHECK_THROWS_AS(mi_bound_finite(0.5, 1), std::domain_error);
}

TEST_CASE("chi2 and maximal-correlation bounds from T") {
    const auto z = chi2_tv_bound(0.0, 0.3);
    CHECK(z.chi2 == 0.0);
    CHECK(z.maxcorr == 0.0);
    const auto b = chi2_tv_bound(0.01, 0.5);
    CHECK(b.chi2 == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(b.maxcorr == doctest::Approx(0.1414213562373095).epsilon(1e-13));
    CHECK(chi2_tv_bound(1.0, 1.0).chi2 == 1.0);
    CHECK_THROWS_AS(chi2_tv_bound(0.1, 0.0), std::domain_error);
}

TEST_CASE("chain mutual-information bound") {
    // n = e^100: the T term comes from the rate-lemma inversion of the
    // unit-budget Gaussian iteration.
    const DobrushinCurve curve(NoiseModel::gaussian(1.0), CostFunction::power(2.0), 1.0);
    const auto h = [&](double u) { return curve.upper_gap(u); };
    const double n = std::exp(100.0);
    const double t_bound = rate_lemma_bound(h, n);
    CHECK(t_bound == doctest::Approx(0.004915).epsilon(2e-3));
    const double v = mi_bound_chain(1, 1.0, n, t_bound);
    CHECK(v < 0.2);
    CHECK(v > 0.0);

    // T_bound = 0 leaves only the quantization terms.
    const double v0 = mi_bound_chain(1, 1.0, n, 0.0);
    const double logn = 100.0;
    const double expect = 0.5 * std::log1p(1.0 / logn) + 1.0 / (2.0 * logn) * std::log1p(logn);
    CHECK(v0 == doctest::Approx(expect).epsilon(1e-12));

    // Nonincreasing in n when the T term tracks the decay bound.
    double prev = 1e9;
    for (double nn : {1e3, 1e6, 1e12, 1e24}) {
        const double tb = rate_lemma_bound(h, nn);
        const double val = mi_bound_chain(1, 1.0, nn, tb);
        CHECK(val <= prev + 1e-12);
        prev = val;
    }
    CHECK_THROWS_AS(mi_bound_chain(1, 1.0, 1e6, 1.5), std::domain_error);
    CHECK_THROWS_AS(mi_bound_chain(0, 1.0, 1e6, 0.1), std::domain_error);
}

TEST_CASE("correlation bounds") {
    CHECK(corr_bound_gaussian(0.0) == 0.0);
    CHECK(corr_bound_gaussian(0.5) == doctest::Approx(0.6321205588285577).epsilon(1e-13));
    CHECK(corr_bound_subgauss(0.01, 1.0) == doctest::Approx(0.3684136148790473).epsilon(1e-13));
    CHECK_THROWS_AS(corr_bound_subgauss(0.48, 1.0), std::domain_error);
    CHECK(corr_bound_moment(0.04, 2.0, 1.0) == doctest::Approx(4.0 * 0.2).epsilon(1e-13));
    CHECK(corr_bound_moment(1.0, 2.0, 10.0) == 1.0);  // clamped
    CHECK_THROWS_AS(corr_bound_moment(0.1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("circuit fixed point") {
    for (double snr : {0.1, 1.0, 4.0, 10.0}) {
        const CircuitBound b1 = circuit_error_bound(snr, 1);
        CHECK(b1.t_star == 0.0);
        CHECK(b1.error_lb == 0.5);
    }
    const CostFunction p2 = CostFunction::power(2.0);
    const CircuitBound b = circuit_error_bound(4.0, 3);
    // Self-consistency: 3 t* >= 1, so t* = F(1) = 1 - 2 Q(2).
    CHECK(3.0 * b.t_star >= 1.0);
    CHECK(b.t_star == doctest::Approx(1.0 - 2.0 * gauss_q(2.0)).epsilon(1e-11));
    CHECK(std::abs(ftv_gaussian(4.0, std::min(1.0, 3.0 * b.t_star), p2) - b.t_star) <= 1e-9);

    // Supremum property: no t above t* satisfies F(k t ^ 1) >= t.
    for (int i = 0; i < 10000; ++i) {
        const double t = b.t_star + (1.0 - b.t_star) * (i + 1) / 10001.0;
        CHECK(ftv_gaussian(4.0, std::min(1.0, 3.0 * t), p2) < t + 1e-12);
    }

    // Error bound nonincreasing in SNR and fan-in.
    double prev = 1.0;
    for (double snr = 0.25; snr <= 8.0; snr *= 2.0) {
        const double e = circuit_error_bound(snr, 3).error_lb;
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
    CHECK(circuit_error_bound(1.0, 4).error_lb <= circuit_error_bound(1.0, 3).error_lb + 1e-12);
    CHECK(circuit_error_bound(1.0, 2).error_lb <= circuit_error_bound(1.0, 1).error_lb + 1e-12);
}

TEST_CASE("tree design formulas") {
    const TreeDesign d = tree_design(10.0, 0.6);
    CHECK(d.theta == doctest::Approx(0.99996832875816688).epsilon(1e-12));
    CHECK(d.p == doctest::Approx(3.1148958032070174e-05).epsilon(1e-11));
    CHECK(d.energy_used == doctest::Approx(2.0 * d.p * 100.0).epsilon(1e-15));
    REQUIRE(d.tv_lower.has_value());
    CHECK(*d.tv_lower ==
          doctest::Approx(2.0 * d.p * (1.0 - 1.0 / (4.0 * d.theta * d.theta))).epsilon(1e-13));

    // Larger mu costs less energy at fixed threshold fraction.
    CHECK(tree_design(30.0, 0.6).energy_used < d.energy_used);
    CHECK_THROWS_AS(tree_design(10.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(tree_design(10.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(tree_design(-1.0, 0.6), std::domain_error);
}

TEST_CASE("tree moments") {
    const TreeDesign d = tree_design(10.0, 0.6);
    const TreeMoments m1 = tree_moments(d, 1);
    CHECK(m1.mean_pm == doctest::Approx(2.0 * d.p).epsilon(1e-14));
    CHECK(m1.second_moment_exact == doctest::Approx(2.0 * d.p).epsilon(1e-14));

    // tv_lb converges monotonically (in n) to the depth limit.
    double prev = 0.0;
    for (std::size_t n = 1; n <= 40; ++n) {
        const TreeMoments m = tree_moments(d, n);
        REQUIRE(m.tv_lb.has_value());
        CHECK(*m.tv_lb <= 1.0);
        CHECK(*m.tv_lb >= prev - 1e-15);
        CHECK(m.second_moment_exact <= m.second_moment_ub + 1e-12);
        prev = *m.tv_lb;
    }
    CHECK(prev == doctest::Approx(*d.tv_lower).epsilon(1e-6));

    // theta -> 1 with p fixed: tv_lb -> 2p * 3/4.
    TreeDesign ideal = d;
    ideal.theta = 1.0;
    const TreeMoments mi = tree_moments(ideal, 60);
    CHECK(*mi.tv_lb == doctest::Approx(2.0 * d.p * 0.75).epsilon(1e-4));

    // 2 theta^2 <= 1: second-moment bound and tv_lb unavailable.
    TreeDesign weak = d;
    weak.theta = 0.6;
    const TreeMoments mw = tree_moments(weak, 5);
    CHECK_FALSE(mw.tv_lb.has_value());
    CHECK(std::isnan(mw.second_moment_ub));
}

TEST_CASE("linear control and capacity anchors") {
    CHECK(linear_control_corr(1.0, 1.0, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(linear_control_corr(1.0, 1.0, 5) == doctest::Approx(0.015625).epsilon(1e-15));
    // Exponential decay with rate ln((1+E)/E).
    const double r = linear_control_corr(1.0, 1.0, 21) / linear_control_corr(1.0, 1.0, 20);
    CHECK(r == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(linear_control_corr(1.0, 1.0, 0), std::domain_error);

    CHECK(awgn_capacity(1, 0.0) == 0.0);
    CHECK(awgn_capacity(1, 1.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(awgn_capacity(2, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    CHECK(clt_bound(100, 1.0, 1.0) == doctest::Approx(0.11968268412042981).epsilon(1e-13));
    CHECK(clt_bound(400, 1.0, 1.0) == doctest::Approx(0.5 * clt_bound(100, 1.0, 1.0)).epsilon(1e-13));
    CHECK(clt_bound(100, 10.0, 1.0) < clt_bound(100, 1.0, 1.0));
    CHECK_THROWS_AS(clt_bound(0, 1.0, 1.0), std::domain_error);
}
