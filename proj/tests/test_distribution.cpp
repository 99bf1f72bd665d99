#include <doctest.h>

#include <cmath>

#include "dcurve/distribution.hpp"
#include "dcurve/math.hpp"
#include "dcurve/quadrature.hpp"

using namespace dcurve;

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(Distribution::discrete({{0.0, 0.5}, {1.0, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::discrete({{0.0, 0.5}, {0.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::discrete({{0.0, -0.2}, {1.0, 1.2}}), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::gauss_mix({{0.0, 1.0, 0.7}, {1.0, 1.0, 0.2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Distribution::gauss_mix({{0.0, 0.0, 1.0}}), std::invalid_argument);
    CHECK_NOTHROW(Distribution::discrete({{0.0, 0.25}, {1.0, 0.75}}));
}

TEST_CASE("cdf across variants") {
    const Distribution d = Distribution::discrete({{0.0, 0.5}, {2.0, 0.5}});
    CHECK(d.cdf(-0.1) == 0.0);
    CHECK(d.cdf(0.0) == 0.5);
    CHECK(d.cdf(3.0) == 1.0);

    const Distribution g = Distribution::gaussian(0.0, 1.0);
    CHECK(g.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.density(0.0) == doctest::Approx(1.0 / kSqrt2Pi).epsilon(1e-14));
}

TEST_CASE("convolve: exact Gaussian paths") {
    const NoiseModel noise = NoiseModel::gaussian(1.0);
    const Distribution a = convolve(Distribution::point_mass(0.0), noise);
    REQUIRE(a.kind() == Distribution::Kind::gauss_mix);
    REQUIRE(a.components().size() == 1);
    CHECK(a.components()[0].mean == 0.0);
    CHECK(a.components()[0].sd == 1.0);
    CHECK(a.components()[0].weight == 1.0);

    const Distribution b =
        convolve(Distribution::discrete({{0.0, 0.5}, {2.0, 0.5}}), noise);
    REQUIRE(b.components().size() == 2);
    CHECK(b.components()[1].mean == 2.0);
    CHECK(b.components()[1].weight == 0.5);

    // Mixture + Gaussian noise: variances add.
    const Distribution c = convolve(Distribution::gaussian(1.0, 1.0), NoiseModel::gaussian(2.0));
    CHECK(c.components()[0].sd == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("convolve: gridded uniform with Gaussian matches the erf difference") {
    // Uniform density on [0,1] with sharp ramp knots.
    const double eps = 1e-9;
    const Distribution u = Distribution::gridded(
        {-0.5, -eps, eps, 1.0 - eps, 1.0 + eps, 1.5}, {0.0, 0.0, 1.0, 1.0, 0.0, 0.0});
    const Distribution conv = convolve(u, NoiseModel::gaussian(1.0));
    REQUIRE(conv.kind() == Distribution::Kind::gridded);
    double worst = 0.0;
    for (double y = -4.0; y <= 5.0; y += 0.01) {
        const double expect = gauss_cdf(y) - gauss_cdf(y - 1.0);
        worst = std::max(worst, std::abs(conv.density(y) - expect));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("convolve: atoms with uniform noise keep their jumps") {
    const Distribution p = Distribution::discrete({{0.0, 0.3}, {2.0, 0.7}});
    const Distribution conv = convolve(p, NoiseModel::uniform(1.0));
    // Density is 0.3 on (-.5,.5), 0.7 on (1.5,2.5), zero elsewhere.
    CHECK(conv.density(0.0) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(conv.density(2.0) == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(conv.density(1.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(conv.cdf(10.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("convolve: under-resolved grid is rejected, never silent") {
    const Distribution p = Distribution::point_mass(0.0);
    CHECK_THROWS_AS(convolve(p, NoiseModel::laplace(1.0), 8), std::runtime_error);
}

TEST_CASE("distribution JSON round trip") {
    const Distribution d = Distribution::discrete({{-1.0, 0.25}, {1.5, 0.75}});
    const Distribution dd = Distribution::from_json(d.to_json());
    CHECK(dd.atoms() == d.atoms());

    const Distribution m = Distribution::gauss_mix({{0.0, 1.0, 0.5}, {2.0, 0.5, 0.5}});
    const Distribution mm = Distribution::from_json(m.to_json());
    CHECK(mm.components().size() == 2);
    CHECK(mm.components()[1].sd == 0.5);

    CHECK_THROWS_AS(Distribution::from_json(nlohmann::json{{"kind", "beta"}}),
                    std::invalid_argument);
}
