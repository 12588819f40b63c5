#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "proxim/fuzzy.hpp"

using namespace proxim;
using namespace proxim::fuzzy;
using doctest::Approx;

TEST_SUITE("fuzzy") {

TEST_CASE("triangular bounds from relative error") {
    auto m = triangular_from_relative_error(1000, 0.3);
    auto t = std::get<Triangular>(m.shape());
    CHECK(t.lower == 700);
    CHECK(t.upper == 1300);

    t = std::get<Triangular>(triangular_from_relative_error(12, 0.6).shape());
    CHECK(t.lower == 5);   // ROUND(4.8)
    CHECK(t.upper == 19);  // ROUND(19.2)

    t = std::get<Triangular>(triangular_from_relative_error(18, 0.6).shape());
    CHECK(t.lower == 7);
    CHECK(t.upper == 29);

    CHECK_THROWS_AS(triangular_from_relative_error(10, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(triangular_from_relative_error(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(triangular_from_relative_error(10, 1.0), std::invalid_argument);
}

TEST_CASE("triangular membership follows the piecewise equation") {
    const auto m = triangular_from_relative_error(1000, 0.3);
    CHECK(m(700) == 0.0);
    CHECK(m(650) == 0.0);
    CHECK(m(850) == Approx(0.5));
    CHECK(m(1000) == 1.0);
    CHECK(m(1150) == Approx(0.5));
    CHECK(m(1300) == 0.0);
}

TEST_CASE("half-width parameterization") {
    CHECK(triangular_from_halfwidth(5, 2, 1)(5) == 1.0);
    CHECK(triangular_from_halfwidth(5, 2, 1)(6) == 0.5);
    CHECK(triangular_from_halfwidth(5, 2, 0.6)(5) == 0.6);
    CHECK_THROWS_AS(triangular_from_halfwidth(5, 0, 1), std::invalid_argument);
}

TEST_CASE("gaussian membership") {
    const auto m = gaussian_membership(12, 3);
    CHECK(m(15) == Approx(0.6065).epsilon(1e-4));
    CHECK(m(12) == 1.0);
    CHECK(m(12 + 18) < 1e-7);
    CHECK(m(12 - 18) < 1e-7);
    CHECK(m.domain() == EvaluationDomain::IntegerGrid);
    CHECK_THROWS_AS(gaussian_membership(12, 0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_membership(12, -1), std::invalid_argument);
}

TEST_CASE("certainty scaling") {
    const auto m = triangular_from_relative_error(1000, 0.3);
    CHECK(apply_certainty(m, Certainty::Certain) == m);
    const auto probable = apply_certainty(m, Certainty::Probable);
    CHECK(probable.peak_height() == Approx(0.7));
    CHECK(probable(1000) == Approx(0.7));
    CHECK(probable.shape() == m.shape());
    CHECK(apply_certainty(m, Certainty::Doubtful).peak_height() == Approx(0.25));
}

TEST_CASE("possibility: triangular reference pair") {
    const auto a = triangular_from_relative_error(12, 0.6);
    const auto b = triangular_from_relative_error(18, 0.6);
    CHECK(std::abs(possibility(a, b) - 0.67) <= 0.005);
    CHECK(possibility(a, b) == Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("possibility: gaussian on the integer grid") {
    const auto a = gaussian_membership(12, 3);
    const auto b = gaussian_membership(18, 3);
    CHECK(std::abs(possibility(a, b) - 0.61) <= 0.005);
    CHECK(possibility(a, b) == Approx(std::exp(-0.5)).epsilon(1e-12));
    // with an off-grid midpoint the grid maximum is below the continuous one
    const double grid = possibility(gaussian_membership(12, 3), gaussian_membership(17, 3));
    CHECK(grid == Approx(std::exp(-9.0 / 18.0)).epsilon(1e-12));
    CHECK(grid < std::exp(-2.5 * 2.5 / 18.0));
}

TEST_CASE("possibility: identity and disjoint supports") {
    const auto a = triangular_from_halfwidth(4, 2);
    CHECK(possibility(a, a) == 1.0);
    CHECK(qualitative_distance(possibility(a, a)) == 0.0);
    CHECK(possibility(a, triangular_from_halfwidth(10, 2)) == 0.0);
    CHECK(possibility(a, triangular_from_halfwidth(8, 2)) == 0.0);  // touching supports
}

TEST_CASE("possibility: ordinal lattice closed forms") {
    const auto g1 = triangular_from_halfwidth(0, 2);
    CHECK(possibility(g1, triangular_from_halfwidth(1, 2)) == Approx(0.75).epsilon(1e-12));
    CHECK(possibility(g1, triangular_from_halfwidth(2, 2)) == Approx(0.5).epsilon(1e-12));
    CHECK(possibility(g1, triangular_from_halfwidth(3, 2)) == Approx(0.25).epsilon(1e-12));

    CHECK(std::abs(possibility(g1, triangular_from_halfwidth(1, 2, 0.6)) - 0.5625) <= 1e-9);
    CHECK(std::abs(possibility(g1, triangular_from_halfwidth(2, 2, 0.6)) - 0.375) <= 1e-9);
    // height h crossing a full triangle one rank away: 1.5h / (1 + h)
    CHECK(possibility(g1, apply_certainty(triangular_from_halfwidth(1, 2), Certainty::Probable)) ==
          Approx(1.5 * 0.7 / 1.7).epsilon(1e-12));
}

TEST_CASE("possibility: symmetry, boundedness, certainty monotonicity") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> peak(-10, 10), width(0.5, 6), height(0.05, 1.0);
    const Certainty levels[] = {Certainty::Certain, Certainty::Probable, Certainty::Possible, Certainty::Doubtful};
    for (int i = 0; i < 500; ++i) {
        const auto a = triangular_from_halfwidth(peak(gen), width(gen), height(gen));
        const auto b = triangular_from_halfwidth(peak(gen), width(gen), height(gen));
        const double p = possibility(a, b);
        CHECK(p == possibility(b, a));
        CHECK(p <= std::min(a.peak_height(), b.peak_height()));
        double prev = p;
        for (auto level : levels) {
            const double q = possibility(a, apply_certainty(b, level));
            CHECK(q <= prev + 1e-15);
            prev = q;
        }
        const auto ga = gaussian_membership(std::round(peak(gen)), width(gen), height(gen));
        const auto gb = gaussian_membership(std::round(peak(gen)), width(gen), height(gen));
        CHECK(possibility(ga, gb) == possibility(gb, ga));
    }
}

TEST_CASE("triangle inequality on rank lattices") {
    for (double w : {1.0, 2.0, 3.0}) {
        for (int a = 0; a <= 10; ++a)
            for (int b = 0; b <= 10; ++b)
                for (int c = 0; c <= 10; ++c) {
                    auto d = [&](int x, int y) {
                        return qualitative_distance(
                            possibility(triangular_from_halfwidth(x, w), triangular_from_halfwidth(y, w)));
                    };
                    CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
                }
    }
}

TEST_CASE("exact possibility matches dense-grid brute force") {
    std::mt19937_64 gen(314159);
    std::uniform_real_distribution<double> peak(-5, 5), side(1.0, 5.0), height(0.1, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double p1 = peak(gen), l1 = p1 - side(gen), u1 = p1 + side(gen), h1 = height(gen);
        const double p2 = peak(gen), l2 = p2 - side(gen), u2 = p2 + side(gen), h2 = height(gen);
        const FuzzyMembership a(Triangular{l1, p1, u1}, h1);
        const FuzzyMembership b(Triangular{l2, p2, u2}, h2);
        const double brute = test::brute_force_max_min(
            [&](double x) { return test::triangle(x, l1, p1, u1, h1); },
            [&](double x) { return test::triangle(x, l2, p2, u2, h2); }, std::min(l1, l2), std::max(u1, u2), 1e-3);
        CHECK(std::abs(possibility(a, b) - brute) <= 1e-3);
        CHECK(possibility(a, b) >= brute - 1e-12);  // exact is a true supremum
    }
}

TEST_CASE("nominal proximity") {
    CHECK(nominal_proximity("tank", "tank", 0.1) == 1.0);
    CHECK(nominal_proximity("tank", "truck", 0.1) == 0.1);
    CHECK(nominal_proximity("tank", "truck", 0.5) == 0.5);
    CHECK_THROWS_AS(nominal_proximity("a", "b", 0.6), std::invalid_argument);
    CHECK_THROWS_AS(nominal_proximity("a", "b", 0.0), std::invalid_argument);

    // plateau max-min agrees with the short-circuit
    CHECK(possibility(nominal_membership("tank", 0.1), nominal_membership("truck", 0.1)) == 0.1);
    CHECK(possibility(nominal_membership("tank", 0.1), nominal_membership("tank", 0.1)) == 1.0);
    const auto doubtful = apply_certainty(nominal_membership("tank", 0.1), Certainty::Doubtful);
    CHECK(possibility(doubtful, nominal_membership("tank", 0.1)) == 0.25);
    CHECK(possibility(doubtful, nominal_membership("truck", 0.1)) == Approx(0.1));
}

TEST_CASE("incompatible axes") {
    const auto nominal = nominal_membership("tank", 0.1);
    const auto numeric = triangular_from_halfwidth(1, 1);
    CHECK_THROWS_AS(possibility(nominal, numeric), IncompatibleAxes);
    CHECK_THROWS_AS(nominal(1.0), IncompatibleAxes);
    CHECK_THROWS_AS(numeric.at("tank"), IncompatibleAxes);
}

TEST_CASE("qualitative distance") {
    CHECK(qualitative_distance(0.75) == 0.25);
    CHECK(qualitative_distance(1.0) == 0.0);
    CHECK(qualitative_distance(0.56) == Approx(0.44));
    CHECK_THROWS_AS(qualitative_distance(1.2), std::invalid_argument);
}

}  // TEST_SUITE
