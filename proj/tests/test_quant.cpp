#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "proxim/quant.hpp"

using namespace proxim::quant;
using doctest::Approx;

TEST_SUITE("quant") {

TEST_CASE("sigma from maximum error") {
    CHECK(sigma_from_max_error(3.0) == 1.0);
    CHECK(sigma_from_max_error(60.0) == 20.0);
    CHECK_THROWS_AS(sigma_from_max_error(0.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma_from_max_error(-1.0), std::invalid_argument);
}

TEST_CASE("degenerate sigma is rejected") {
    CHECK_THROWS_AS(NormalErrorModel(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NormalErrorModel(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("interval probability reference values") {
    CHECK(std::abs(interval_probability({12, 3}, 12, 21) - 0.499) <= 1e-3);
    CHECK(std::abs(interval_probability({18, 2}, 12, 21) - 0.932) <= 1e-3);
}

TEST_CASE("interval probability edge cases") {
    const NormalErrorModel m(5.0, 1.5);
    CHECK(std::abs(interval_probability(m, 5.0 - 4.5, 5.0 + 4.5) - 0.9973) <= 1e-4);
    CHECK(interval_probability(m, 7.0, 7.0) == 0.0);
    CHECK_THROWS_AS(interval_probability(m, 2.0, 1.0), std::invalid_argument);
    // far tail keeps precision
    CHECK(interval_probability(m, 5.0 + 30.0, 5.0 + 31.0) >= 0.0);
    CHECK(interval_probability(m, 5.0 + 6.0, 5.0 + 7.5) == Approx(0.5 * std::erfc(4.0 / std::sqrt(2.0)) -
                                                                    0.5 * std::erfc(5.0 / std::sqrt(2.0))));
}

TEST_CASE("interval probability agrees with Monte-Carlo") {
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> mean(-50.0, 50.0), sd(0.1, 10.0), offset(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double m = mean(gen), s = sd(gen);
        double c = m + offset(gen) * s, d = m + offset(gen) * s;
        if (c > d) std::swap(c, d);
        const double mc = test::monte_carlo_interval(m, s, c, d, 1'000'000, gen());
        CHECK(std::abs(interval_probability({m, s}, c, d) - mc) <= 0.003);
    }
}

TEST_CASE("overlap interval") {
    auto ov = overlap_interval({12, 3}, {18, 2});
    REQUIRE_FALSE(ov.empty());
    CHECK(ov.c == 12.0);
    CHECK(ov.d == 21.0);

    ov = overlap_interval({4, 1.5}, {4, 1.5});
    CHECK(ov.c == Approx(-0.5));
    CHECK(ov.d == Approx(8.5));

    CHECK(overlap_interval({0, 1}, {100, 1}).empty());
}

TEST_CASE("joint overlap probability") {
    CHECK(std::abs(joint_overlap_probability({12, 3}, {18, 2}) - 0.465) <= 1e-3);
    CHECK(joint_overlap_probability({0, 1}, {100, 1}) == 0.0);

    // Each factor estimated empirically, independently of the CDF path.
    const double factor = test::monte_carlo_interval(7.0, 2.0, 1.0, 13.0, 1'000'000, 99);
    const double product = factor * test::monte_carlo_interval(7.0, 2.0, 1.0, 13.0, 1'000'000, 100);
    CHECK(std::abs(joint_overlap_probability({7, 2}, {7, 2}) - product) <= 1e-3);
    CHECK(std::abs(joint_overlap_probability({7, 2}, {7, 2}) - 0.9946) <= 1e-3);
}

TEST_CASE("confidence coefficient") {
    CHECK(std::abs(confidence_coefficient(2, 2, 3) - 0.87) <= 0.01);
    CHECK(std::abs(confidence_coefficient(1, 1, 3) - 0.9973) <= 1e-3);
    CHECK(std::abs(confidence_coefficient(1, 2, 3) - 0.93) <= 0.01);
    // geometric mean of the single-model masses
    CHECK(confidence_coefficient(1, 2, 3) == Approx(0.9295410335412794).epsilon(1e-12));
    CHECK(confidence_coefficient(2, 2, 3) == Approx(central_mass(2, 3)).epsilon(1e-15));
    CHECK_THROWS_AS(confidence_coefficient(0, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(confidence_coefficient(1, 1, 0), std::invalid_argument);
}

TEST_CASE("metric axioms on 12, 15, 18") {
    const NormalErrorModel x1(12, 2), x2(15, 2), x3(18, 2);
    const double d12 = quantitative_distance(x1, x2);
    const double d13 = quantitative_distance(x1, x3);
    const double d23 = quantitative_distance(x2, x3);
    CHECK(std::abs(d12 - 0.13) <= 0.01);
    CHECK(std::abs(d13 - 0.75) <= 0.01);
    CHECK(std::abs(d23 - 0.13) <= 0.01);
    CHECK(d13 > d12 + d23);  // triangle inequality fails for the raw measure
}

TEST_CASE("corrected coincidence") {
    const NormalErrorModel a(3, 1);
    const double corrected = quantitative_distance(a, a, 3.0);
    CHECK(std::abs(corrected - 0.008) <= 0.002);
    CHECK(corrected == Approx(0.008077541171971236).epsilon(1e-9));
    // Monte-Carlo cross-check of the closed form 1 - P_S·P_ξ.
    const double ps = std::pow(test::monte_carlo_interval(0, 1, -3, 3, 1'000'000, 5), 2);
    const double pxi = test::monte_carlo_interval(0, 1, -3, 3, 1'000'000, 6);
    CHECK(std::abs(corrected - (1.0 - ps * pxi)) <= 2e-3);

    CHECK(quantitative_distance(a, a) <= 0.0054 + 1e-3);
    CHECK(quantitative_distance({0, 1}, {50, 1}) == 1.0);
}

TEST_CASE("symmetry and range over random inputs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> v(-20, 20), s(0.05, 6), xi(0.1, 10);
    for (int i = 0; i < 2000; ++i) {
        const NormalErrorModel a(v(gen), s(gen)), b(v(gen), s(gen));
        const double x = xi(gen);
        CHECK(quantitative_proximity(a, b) == quantitative_proximity(b, a));
        CHECK(quantitative_proximity(a, b, x) == quantitative_proximity(b, a, x));
        const double p = quantitative_proximity(a, b, x);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(quantitative_distance(a, b, x) == 1.0 - p);
    }
}

TEST_CASE("shape of the distance curve") {
    for (double sigma : {1.0, 2.0}) {
        double prev = -1.0;
        for (int k = 0; k <= 12; ++k) {
            const double d = quantitative_distance({0, sigma}, {0.5 * sigma * k, sigma});
            CHECK(d >= prev);
            prev = d;
        }
    }
    for (int sep = 1; sep <= 12; ++sep)
        CHECK(quantitative_distance({0, 1}, {double(sep), 1}) >= quantitative_distance({0, 2}, {double(sep), 2}));
    CHECK(quantitative_distance({0, 1}, {0, 1}, 3.0) < quantitative_distance({0, 2}, {0, 2}, 3.0));
}

}  // TEST_SUITE
