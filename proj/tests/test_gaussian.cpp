#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "pricer/gaussian.hpp"
#include "pricer/quadrature.hpp"

using namespace pricer;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("norm_cdf reference values") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // 0.8413447460685429 = Phi(1), standard table value to full precision.
    CHECK(norm_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
    CHECK(norm_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-15));
    CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
    CHECK(norm_cdf(kInf) == 1.0);
    CHECK(norm_cdf(-kInf) == 0.0);
    CHECK(norm_cdf(40.0) == 1.0);
    CHECK(norm_cdf(-40.0) == 0.0);
    CHECK_THROWS_AS(norm_cdf(std::nan("")), std::invalid_argument);
}

TEST_CASE("norm_cdf symmetry and pdf consistency") {
    for (double x = -8.0; x <= 8.0; x += 0.173) {
        CHECK(norm_cdf(x) + norm_cdf(-x) == doctest::Approx(1.0).epsilon(1e-15));
        const double h = 1e-5;
        const double deriv = (norm_cdf(x + h) - norm_cdf(x - h)) / (2.0 * h);
        CHECK(deriv == doctest::Approx(norm_pdf(x)).epsilon(1e-8));
    }
}

TEST_CASE("inv_norm_cdf round trip") {
    for (double p = 1e-12; p < 1.0; p = p < 0.5 ? p * 3.7 : 1.0 - (1.0 - p) / 3.7) {
        const double x = inv_norm_cdf(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-13));
    }
    CHECK(inv_norm_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(inv_norm_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK_THROWS_AS(inv_norm_cdf(0.0), std::invalid_argument);
    CHECK_THROWS_AS(inv_norm_cdf(1.0), std::invalid_argument);
}

TEST_CASE("binorm_cdf closed-form checks") {
    // P(Y0<=0, Y1<=0) = 1/4 + asin(rho)/(2 pi).
    for (double rho : {-0.95, -0.5, 0.0, 0.3, 0.7, 0.925, 0.99}) {
        const double expected = 0.25 + std::asin(rho) / (2.0 * M_PI);
        CHECK(binorm_cdf(0.0, 0.0, rho) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(binorm_cdf(0.0, 0.0, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // Independence factorizes.
    CHECK(binorm_cdf(0.7, -1.2, 0.0) ==
          doctest::Approx(norm_cdf(0.7) * norm_cdf(-1.2)).epsilon(1e-14));
    // Perfect correlation reduces to min / antimonotone difference.
    CHECK(binorm_cdf(0.4, 1.3, 1.0) == doctest::Approx(norm_cdf(0.4)).epsilon(1e-15));
    CHECK(binorm_cdf(0.4, -0.2, -1.0) ==
          doctest::Approx(norm_cdf(0.4) - norm_cdf(0.2)).epsilon(1e-14));
    CHECK(binorm_cdf(0.4, -0.5, -1.0) == doctest::Approx(0.0).epsilon(1e-14));
    // Marginal recovery at an infinite limit.
    CHECK(binorm_cdf(kInf, 0.8, 0.6) == doctest::Approx(norm_cdf(0.8)).epsilon(1e-15));
    CHECK(binorm_cdf(-kInf, 0.8, 0.6) == 0.0);
    CHECK_THROWS_AS(binorm_cdf(0.0, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("binorm_cdf vs brute-force quadrature") {
    // Conditional-decomposition quadrature as an independent check:
    // P = int_{-inf}^{a} phi(x) Phi((b - rho x)/sqrt(1-rho^2)) dx.
    auto brute = [](double a, double b, double rho) {
        const double s = std::sqrt(1.0 - rho * rho);
        auto f = [&](double x) { return norm_pdf(x) * norm_cdf((b - rho * x) / s); };
        return composite_gl(f, -9.0, a, 96, 16);
    };
    for (double rho : {-0.8, -0.3, 0.45, 0.95})
        for (double a : {-1.0, 0.3})
            for (double b : {-0.4, 1.2})
                CHECK(binorm_cdf(a, b, rho) == doctest::Approx(brute(a, b, rho)).epsilon(1e-13));
}

TEST_CASE("markov_correlation structure and inverse") {
    const std::vector<double> expiries = {0.25, 0.5, 1.0, 1.75, 2.0};
    const std::vector<Sign> signs(5, Sign::Up);
    const CorrelationStructure corr = markov_correlation(0.0, expiries, signs);
    REQUIRE(corr.dim == 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j)
            CHECK(corr.rho[i][j] ==
                  doctest::Approx(std::sqrt(expiries[i] / expiries[j])).epsilon(1e-14));
    // a_matrix must invert rho: (A R)_ij = delta_ij.
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double s = 0.0;
            for (int k = 0; k < 5; ++k) {
                const double rkj = k <= j ? corr.rho[k][j] : corr.rho[j][k];
                s += corr.a_matrix[i][k] * rkj;
            }
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
}

TEST_CASE("markov_correlation mixed signs") {
    const std::vector<double> expiries = {0.5, 1.0};
    const CorrelationStructure corr = markov_correlation(0.0, expiries, {Sign::Up, Sign::Down});
    CHECK(corr.rho[0][1] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
    // Inverse is built from |rho| and is sign-free.
    CHECK(corr.a_matrix[0][1] < 0.0);
}

TEST_CASE("mvn_cdf n=1 and n=2 agree with univariate/bivariate") {
    const CorrelationStructure c1 = markov_correlation(0.0, {1.0}, {Sign::Up});
    CHECK(mvn_cdf({0.7}, c1).value == doctest::Approx(norm_cdf(0.7)).epsilon(1e-14));

    const std::vector<double> exp2 = {0.5, 1.25};
    const double rho = std::sqrt(0.5 / 1.25);
    for (auto s0 : {Sign::Up, Sign::Down})
        for (auto s1 : {Sign::Up, Sign::Down}) {
            const CorrelationStructure c2 = markov_correlation(0.0, exp2, {s0, s1});
            const double srho = sign_value(s0) * sign_value(s1) * rho;
            for (double a : {-1.4, 0.2, 1.1})
                for (double b : {-0.6, 0.9}) {
                    const MvnResult res = mvn_cdf({a, b}, c2);
                    CHECK(res.value == doctest::Approx(binorm_cdf(a, b, srho)).epsilon(5e-11));
                }
        }
}

TEST_CASE("mvn_cdf n=3 orthant against closed form") {
    // Zero-limit orthant: p = 1/8 + (asin r12 + asin r13 + asin r23)/(4 pi).
    const std::vector<double> expiries = {0.4, 0.9, 1.6};
    const CorrelationStructure corr =
        markov_correlation(0.0, expiries, std::vector<Sign>(3, Sign::Up));
    double asum = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) asum += std::asin(std::sqrt(expiries[i] / expiries[j]));
    const double expected = 0.125 + asum / (4.0 * M_PI);
    const MvnResult res = mvn_cdf({0.0, 0.0, 0.0}, corr);
    CHECK(res.value == doctest::Approx(expected).epsilon(1e-11));
    CHECK(res.error_estimate < 1e-10);
}

TEST_CASE("mvn_cdf marginalization consistency") {
    // Sending one limit to +inf must drop that variable.
    const std::vector<double> e4 = {0.3, 0.8, 1.3, 2.1};
    const CorrelationStructure c4 = markov_correlation(0.0, e4, std::vector<Sign>(4, Sign::Up));
    const CorrelationStructure c3 =
        markov_correlation(0.0, {0.3, 0.8, 1.3}, std::vector<Sign>(3, Sign::Up));
    const double full = mvn_cdf({0.5, -0.2, 0.9, kInf}, c4).value;
    const double marg = mvn_cdf({0.5, -0.2, 0.9}, c3).value;
    CHECK(full == doctest::Approx(marg).epsilon(1e-11));
}

TEST_CASE("mvn_cdf chain path matches rqmc fallback") {
    // Same matrix fed as a generic PD matrix (from_matrix leaves a_matrix
    // empty, forcing the sampling path) must agree within its error bar.
    const std::vector<double> e3 = {0.5, 1.0, 2.0};
    const CorrelationStructure chain =
        markov_correlation(0.0, e3, std::vector<Sign>(3, Sign::Up));
    std::vector<std::vector<double>> m(3, std::vector<double>(3, 1.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = std::sqrt(e3[std::min(i, j)] / e3[std::max(i, j)]);
    const CorrelationStructure generic = CorrelationStructure::from_matrix(m);
    const std::vector<double> limits = {0.4, 1.0, -0.3};
    const MvnResult a = mvn_cdf(limits, chain);
    const MvnResult b = mvn_cdf(limits, generic, 1e-9);
    CHECK(std::abs(a.value - b.value) < 5e-9);
}

TEST_CASE("mvn_cdf high-dimension sanity") {
    // 8 dates, all-up chain, zero limits; compare against pairwise orthant
    // bound monotonicity: p must lie in (Phi(0)^8, Phi(0)) and shrink as the
    // dimension grows.
    std::vector<double> expiries;
    for (int i = 1; i <= 8; ++i) expiries.push_back(0.25 * i);
    double prev = 1.0;
    for (int n = 1; n <= 8; ++n) {
        std::vector<double> e(expiries.begin(), expiries.begin() + n);
        const CorrelationStructure corr =
            markov_correlation(0.0, e, std::vector<Sign>(n, Sign::Up));
        const double p = mvn_cdf(std::vector<double>(n, 0.0), corr).value;
        CHECK(p < prev + 1e-15);
        CHECK(p > std::pow(0.5, n) - 1e-15);
        prev = p;
    }
}

TEST_CASE("from_matrix validation") {
    CHECK_THROWS_AS(CorrelationStructure::from_matrix({{1.0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(CorrelationStructure::from_matrix({{1.0, 0.5}, {0.4, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CorrelationStructure::from_matrix({{0.9, 0.5}, {0.5, 1.0}}),
                    std::invalid_argument);
}
