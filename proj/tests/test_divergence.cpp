#include <doctest.h>

#include <cmath>
#include <vector>

#include "dcurve/divergence.hpp"
#include "dcurve/math.hpp"
#include "dcurve/rng.hpp"

using namespace dcurve;

namespace {

Distribution bern(double p) { return Distribution::discrete({{0.0, 1.0 - p}, {1.0, p}}); }

Distribution random_discrete(TrialRng& rng, std::size_t n_atoms) {
    std::vector<std::pair<double, double>> atoms;
    double mass = 0.0;
    for (std::size_t i = 0; i < n_atoms; ++i) {
        atoms.emplace_back(-2.0 + 4.0 * rng.uniform(), 0.05 + rng.uniform());
        mass += atoms.back().second;
    }
    double run = 0.0;
    for (std::size_t i = 0; i + 1 < n_atoms; ++i) {
        atoms[i].second /= mass;
        run += atoms[i].second;
    }
    atoms.back().second = 1.0 - run;
    return Distribution::discrete(std::move(atoms));
}

ChannelMatrix random_channel(TrialRng& rng, std::size_t nx, std::size_t ny) {
    std::vector<std::vector<double>> rows(nx, std::vector<double>(ny));
    for (auto& row : rows) {
        double s = 0.0;
        for (double& v : row) {
            v = 0.05 + rng.uniform();
            s += v;
        }
        double run = 0.0;
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            row[j] /= s;
            run += row[j];
        }
        row[ny - 1] = 1.0 - run;
    }
    return ChannelMatrix(std::move(rows));
}

}  // namespace

TEST_CASE("tv basics") {
    const Distribution p = bern(0.5);
    CHECK(tv(p, p) == 0.0);
    CHECK(tv(bern(0.5), bern(0.1)) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(tv(bern(0.1), bern(0.5)) == doctest::Approx(0.4).epsilon(1e-15));

    const Distribution g0 = Distribution::gaussian(0.0, 1.0);
    const Distribution g2 = Distribution::gaussian(2.0, 1.0);
    CHECK(tv(g0, g2) == doctest::Approx(0.6826894921370859).epsilon(1e-8));

    CHECK_THROWS_AS(tv(p, g0), std::invalid_argument);  // atoms never meet densities directly
}

TEST_CASE("e_gamma properties and anchors") {
    const Distribution p = bern(0.5);
    const Distribution q = bern(0.1);
    CHECK(e_gamma(p, q, 1.0) == doctest::Approx(tv(p, q)).epsilon(1e-14));
    CHECK(e_gamma(p, q, 0.0) == 0.0);
    CHECK(e_gamma(p, q, 2.0) == doctest::Approx(0.3).epsilon(1e-14));
    // Reciprocity: E_gamma(P||Q) = gamma E_{1/gamma}(Q||P).
    CHECK(e_gamma(p, q, 2.0) == doctest::Approx(2.0 * e_gamma(q, p, 0.5)).epsilon(1e-13));
    CHECK_THROWS_AS(e_gamma(p, q, -0.5), std::domain_error);

    // On random overlapping-support pairs: E_gamma <= min(1, gamma) TV,
    // the maximum sits at gamma = 1 (the kink), and the curve is convex on
    // each side of the kink.
    const double pool[] = {-1.5, -0.5, 0.0, 0.5, 1.5};
    for (std::uint64_t pair = 0; pair < 12; ++pair) {
        TrialRng rng(99, pair);
        auto draw = [&] {
            std::vector<std::pair<double, double>> atoms;
            double mass = 0.0;
            for (int k = 0; k < 5; ++k) {
                if (k >= 2 && rng.uniform() < 0.4) continue;  // always keep two
                atoms.emplace_back(pool[k], 0.05 + rng.uniform());
                mass += atoms.back().second;
            }
            double run = 0.0;
            for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
                atoms[k].second /= mass;
                run += atoms[k].second;
            }
            atoms.back().second = 1.0 - run;
            return Distribution::discrete(std::move(atoms));
        };
        const Distribution a = draw();
        const Distribution b = draw();
        const double tv_ab = tv(a, b);
        std::vector<double> gs, es;
        for (double g = 0.0; g <= 5.0; g += 0.125) {
            gs.push_back(g);
            es.push_back(e_gamma(a, b, g));
            CHECK(es.back() <= std::min(1.0, g) * tv_ab + 1e-12);
            CHECK(es.back() >= -1e-15);
            CHECK(es.back() <= tv_ab + 1e-12);  // maximum attained at gamma = 1
        }
        for (std::size_t i = 1; i + 1 < gs.size(); ++i) {
            if (gs[i - 1] >= 1.0 || gs[i + 1] <= 1.0) {  // convex off the kink
                const double mid = 0.5 * (es[i - 1] + es[i + 1]);
                CHECK(es[i] <= mid + 1e-12);
            }
        }
    }
}

TEST_CASE("e_gamma derivative closed form") {
    const Distribution p = bern(0.5);
    const Distribution q = bern(0.1);
    // Likelihood ratios {5/9, 5}; Q-mass above gamma=2 is the atom at 1.
    CHECK(e_gamma_derivative_check(p, q, 2.0) == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(e_gamma_derivative_check(p, q, 100.0) == 0.0);
    CHECK_THROWS_AS(e_gamma_derivative_check(p, q, 1.0), std::domain_error);

    // Finite-difference cross-check at gamma = 0.7.
    const double h = 1e-6;
    const double fd = (e_gamma(p, q, 0.7 + h) - e_gamma(p, q, 0.7 - h)) / (2.0 * h);
    CHECK(e_gamma_derivative_check(p, q, 0.7) == doctest::Approx(fd).epsilon(1e-6));

    // Density pair: same cross-check through the rendered path.
    const Distribution g0 = Distribution::gaussian(0.0, 1.0);
    const Distribution g1 = Distribution::gaussian(1.0, 1.0);
    const double fd2 = (e_gamma(g1, g0, 0.7 + h) - e_gamma(g1, g0, 0.7 - h)) / (2.0 * h);
    CHECK(e_gamma_derivative_check(g1, g0, 0.7) == doctest::Approx(fd2).epsilon(1e-5));
}

TEST_CASE("f-divergence closed-form anchors") {
    const Distribution p = Distribution::gaussian(1.0, 1.0);
    const Distribution q = Distribution::gaussian(0.0, 1.0);
    CHECK(f_divergence(p, q, DivergenceKind::kl()) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(f_divergence(p, q, DivergenceKind::chi2()) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));
    CHECK(f_divergence(p, q, DivergenceKind::hellinger2()) ==
          doctest::Approx(2.0 * (1.0 - std::exp(-0.125))).epsilon(1e-10));
    // Renyi order 2 generator recovers chi-square.
    CHECK(f_divergence(p, q, DivergenceKind::renyi(2.0)) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));
    // Half Hellinger via the alpha = 1/2 generator.
    CHECK(2.0 * f_divergence(p, q, DivergenceKind::renyi(0.5)) ==
          doctest::Approx(f_divergence(p, q, DivergenceKind::hellinger2())).epsilon(1e-9));

    // Absolute-continuity failure -> infinity for the inf-prone kinds.
    const Distribution wide = Distribution::discrete({{0.0, 0.5}, {3.0, 0.5}});
    const Distribution narrow = Distribution::discrete({{0.0, 1.0}});
    CHECK(std::isinf(f_divergence(wide, narrow, DivergenceKind::kl())));
    CHECK(std::isinf(f_divergence(wide, narrow, DivergenceKind::chi2())));
    CHECK_FALSE(std::isinf(f_divergence(wide, narrow, DivergenceKind::hellinger2())));
    CHECK_THROWS_AS(DivergenceKind::renyi(0.0), std::domain_error);
}

TEST_CASE("integral representation matches direct divergences") {
    const Distribution p = Distribution::gaussian(1.0, 1.0);
    const Distribution q = Distribution::gaussian(0.0, 1.0);
    CHECK(integral_representation(p, q, DivergenceKind::chi2()) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-4));
    CHECK(integral_representation(p, q, DivergenceKind::kl()) ==
          doctest::Approx(0.5).epsilon(1e-4));
    CHECK(integral_representation(p, q, DivergenceKind::hellinger2()) ==
          doctest::Approx(2.0 * (1.0 - std::exp(-0.125))).epsilon(1e-4));

    // P = Q integrates E_gamma = 0 exactly.
    CHECK(integral_representation(p, p, DivergenceKind::chi2()) == 0.0);

    // Discrete pair: representation tracks the direct value.
    const Distribution bp = bern(0.5);
    const Distribution bq = bern(0.1);
    CHECK(integral_representation(bp, bq, DivergenceKind::chi2()) ==
          doctest::Approx(f_divergence(bp, bq, DivergenceKind::chi2())).epsilon(2e-3));

    // Broken absolute continuity surfaces as the distinguished infinity.
    const Distribution wide = Distribution::discrete({{0.0, 0.5}, {3.0, 0.5}});
    const Distribution narrow = Distribution::discrete({{0.0, 1.0}});
    CHECK(std::isinf(integral_representation(wide, narrow, DivergenceKind::chi2())));
    CHECK(std::isinf(integral_representation(wide, narrow, DivergenceKind::kl())));
    CHECK_FALSE(std::isinf(integral_representation(wide, narrow, DivergenceKind::hellinger2())));
}

TEST_CASE("dobrushin coefficient") {
    const ChannelMatrix bsc({{0.9, 0.1}, {0.1, 0.9}});
    CHECK(dobrushin_coefficient(bsc) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(dobrushin_coefficient(ChannelMatrix({{1.0, 0.0}, {0.0, 1.0}})) == 1.0);
    CHECK(dobrushin_coefficient(ChannelMatrix({{0.3, 0.7}, {0.3, 0.7}})) == 0.0);
    CHECK_THROWS_AS(ChannelMatrix({{0.5, 0.6}}), std::invalid_argument);

    // Data processing: coefficient of a composition is submultiplicative.
    for (std::uint64_t i = 0; i < 20; ++i) {
        TrialRng rng(7, i);
        const ChannelMatrix a = random_channel(rng, 3, 4);
        const ChannelMatrix b = random_channel(rng, 4, 3);
        CHECK(dobrushin_coefficient(a.compose(b)) <=
              dobrushin_coefficient(a) * dobrushin_coefficient(b) + 1e-12);
    }
}

TEST_CASE("eta_chi2 for discrete channels") {
    const ChannelMatrix bsc({{0.9, 0.1}, {0.1, 0.9}});
    const double uni[] = {0.5, 0.5};
    CHECK(eta_chi2_discrete(uni, bsc) == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(eta_chi2_discrete(uni, ChannelMatrix({{1.0, 0.0}, {0.0, 1.0}})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eta_chi2_discrete(uni, ChannelMatrix({{0.3, 0.7}, {0.3, 0.7}})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    const double bad[] = {0.0, 1.0};
    CHECK_THROWS_AS(eta_chi2_discrete(bad, bsc), std::invalid_argument);

    // eta_chi2 <= eta_TV over random channels with uniform input.
    for (std::uint64_t i = 0; i < 50; ++i) {
        TrialRng rng(11, i);
        const ChannelMatrix ch = random_channel(rng, 3, 3);
        const double in3[] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        CHECK(eta_chi2_discrete(in3, ch) <= dobrushin_coefficient(ch) + 1e-10);
    }
}

TEST_CASE("renyi contraction bound evaluation") {
    const double v = renyi_contraction_bound(0.5, 1.0, 0.01, 0.1);
    CHECK(v < 0.01 + 0.02);
    CHECK(std::isfinite(v));
    // bound / t -> 1 as t -> 0 (additive term vanishes).
    const double tiny = 1e-60;
    CHECK(renyi_contraction_bound(0.5, 1.0, tiny, 0.1) / tiny ==
          doctest::Approx(1.0).epsilon(1e-5));
    // Monotone in t on (0, 0.1].
    double prev = 0.0;
    for (double t = 1e-3; t <= 0.1; t += 1e-3) {
        const double b = renyi_contraction_bound(0.5, 1.0, t, 0.1);
        CHECK(b >= prev);
        prev = b;
    }
    CHECK_THROWS_AS(renyi_contraction_bound(1.5, 1.0, 0.01, 0.1), std::domain_error);
    CHECK_THROWS_AS(renyi_contraction_bound(0.5, -1.0, 0.01, 0.1), std::domain_error);
}

TEST_CASE("noncontraction witness") {
    const auto [p, q] = noncontraction_witness(2.0, 0.1, 2.0, 1e-4);
    const double pp = p.atoms()[1].second;
    const double b = p.atoms()[1].first;
    CHECK(pp == doctest::Approx(3.1622776601683794e-3).epsilon(1e-12));
    CHECK(b == doctest::Approx(25.148668593658707).epsilon(1e-12));
    CHECK(pp * b * b == doctest::Approx(2.0).epsilon(1e-14));  // cost exactly a

    // D_{f_2}(P_q || Q_q) -> t as q -> 0.
    double prev = 0.0;
    for (double qv : {1e-2, 1e-3, 1e-4}) {
        const auto [pq, qq] = noncontraction_witness(2.0, 0.1, 2.0, qv);
        const double d = f_divergence(pq, qq, DivergenceKind::renyi(2.0));
        CHECK(d > prev);
        CHECK(d <= 0.1);
        CHECK(std::abs(d - 0.1) <= 2.0 * std::sqrt(0.1 * qv) + 10.0 * qv);
        prev = d;
    }
    CHECK_THROWS_AS(noncontraction_witness(1.0, 0.5, 2.0, 1e-4), std::domain_error);
    CHECK_NOTHROW(noncontraction_witness(1.0, 0.2, 2.0, 1e-6));
}

TEST_CASE("tv_w1 smoothing bound") {
    CHECK(tv_w1_bound(NoiseModel::gaussian(1.0), 0.0) == 0.0);
    // First order: P[|Z| <= w/2] ~ w / sqrt(2 pi sigma^2) for small w.
    const double sigma = 2.0, w1 = 1e-4;
    CHECK(tv_w1_bound(NoiseModel::gaussian(sigma), w1) ==
          doctest::Approx(w1 / std::sqrt(2.0 * kPi * sigma * sigma)).epsilon(1e-6));
    CHECK(tv_w1_bound(NoiseModel::uniform(1.0), 2.0) == 1.0);
    CHECK_THROWS_AS(tv_w1_bound(NoiseModel::exponential(1.0), 0.5), std::domain_error);
}

TEST_CASE("w1 distance") {
    const Distribution a = Distribution::point_mass(0.0);
    const Distribution b = Distribution::point_mass(1.0);
    CHECK(w1_distance(a, a) == 0.0);
    CHECK(w1_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));

    const Distribution g0 = Distribution::gaussian(0.0, 1.0);
    const Distribution g1 = Distribution::gaussian(1.0, 1.0);
    CHECK(w1_distance(g0, g1) == doctest::Approx(1.0).epsilon(1e-6));
}
