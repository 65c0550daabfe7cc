#include "doctest.h"

#include <cmath>
#include <random>

#include "pricer/core.hpp"

using namespace pricer;

TEST_CASE("mu collapses to -r and -q at alpha 0 and 1") {
    MarketParams p(0.05, 0.02, 0.2);
    CHECK(mu(p, 0.0) == doctest::Approx(-0.05).epsilon(1e-14));
    CHECK(mu(p, 1.0) == doctest::Approx(-0.02).epsilon(1e-14));
    CHECK(mu(p, 2.0) == doctest::Approx(0.05).epsilon(1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(-0.05, 0.12), us(0.05, 0.6);
    for (int k = 0; k < 500; ++k) {
        MarketParams m(ur(rng), ur(rng), us(rng));
        CHECK(mu(m, 0.0) == doctest::Approx(-m.r).epsilon(1e-13));
        CHECK(mu(m, 1.0) == doctest::Approx(-m.q).epsilon(1e-13));
    }
}

TEST_CASE("mu is a convex quadratic with minimum at (q-r)/sigma^2 + 1/2") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(-0.05, 0.12), us(0.1, 0.5);
    for (int k = 0; k < 100; ++k) {
        MarketParams m(ur(rng), ur(rng), us(rng));
        const double astar = (m.q - m.r) / (m.sigma * m.sigma) + 0.5;
        const double h = 1e-4;
        const double second = (mu(m, astar + h) - 2.0 * mu(m, astar) + mu(m, astar - h)) / (h * h);
        CHECK(second == doctest::Approx(m.sigma * m.sigma).epsilon(1e-6));
        const double first = (mu(m, astar + h) - mu(m, astar - h)) / (2.0 * h);
        CHECK(std::abs(first) < 1e-10);
    }
}

TEST_CASE("d_arg basic values") {
    // Drift term vanishes when r - q - sigma^2/2 + alpha sigma^2 == 0.
    MarketParams p1(0.02, 0.0, 0.2);  // alpha = (q - r)/sigma^2 + 1/2 = 0
    CHECK(d_arg(1.0, p1, 0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));

    MarketParams p2(0.03, 0.03, 1.0);
    CHECK(d_arg(std::exp(1.0), p2, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

    // Independently recomputed: [ln 2 + (0.05 - 0.02) * 0.25] / (0.2 * 0.5).
    MarketParams p3(0.05, 0.0, 0.2);
    const double expected = (std::log(2.0) + (0.05 - 0.02) * 0.25) / 0.1;
    CHECK(d_arg(2.0, p3, 0.0, 0.25) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(d_arg(2.0, p3, 0.0, 0.25) == doctest::Approx(7.0064718055995).epsilon(1e-12));
}

TEST_CASE("delta_arg reduces to d_arg when tau1 == tau1p") {
    MarketParams p(0.05, 0.01, 0.3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uy(0.2, 5.0), ut(0.05, 3.0), ua(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const double y = uy(rng), tau = ut(rng), a = ua(rng);
        CHECK(delta_arg(y, tau, tau, a, p) == doctest::Approx(d_arg(y, p, a, tau)).epsilon(1e-13));
    }
    CHECK(delta_arg(1.0, 0.0, 1.0, 1.7, p) == doctest::Approx(0.0).epsilon(1e-14));

    // Hand evaluation, two routes: direct formula and term-by-term.
    MarketParams ph(0.03, 0.0, 0.25);
    const double num = std::log(1.1) + (0.03 - 0.03125 + 0.0625) * 0.5;
    const double direct = num / (0.25 * std::sqrt(0.3));
    CHECK(delta_arg(1.1, 0.5, 0.3, 1.0, ph) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("d_arg is strictly increasing in moneyness") {
    MarketParams p(0.05, 0.02, 0.2);
    double prev = d_arg(0.1, p, 1.0, 0.7);
    for (double m = 0.2; m < 5.0; m += 0.1) {
        const double d = d_arg(m, p, 1.0, 0.7);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(MarketParams(0.05, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MarketParams(0.05, 0.0, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(Horizon(0.5, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(MonitoringSchedule({0.0, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(FixedObservations({100.0, -1.0}), std::invalid_argument);
    MarketParams ok(0.05, 0.0, 0.2);
    CHECK_THROWS_AS(d_arg(2.0, ok, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_arg(2.0, 0.1, 0.0, 0.0, ok), std::invalid_argument);
}
