#pragma once

#include <vector>

#include "pricer/core.hpp"

namespace pricer {

// Order-n power binary contract: payoff x^alpha gated by a chain of
// threshold conditions 1(s_i x > s_i xi_i) checked at T_0 < ... < T_{n-1}.
struct PowerBinarySpec {
    double alpha;
    std::vector<double> thresholds;
    std::vector<Sign> signs;
    std::vector<double> expiries;

    PowerBinarySpec(double alpha_, std::vector<double> xi, std::vector<Sign> s,
                    std::vector<double> T)
        : alpha(alpha_), thresholds(std::move(xi)), signs(std::move(s)), expiries(std::move(T)) {
        const std::size_t n = thresholds.size();
        if (n == 0 || signs.size() != n || expiries.size() != n)
            throw std::invalid_argument("PowerBinarySpec: thresholds/signs/expiries size mismatch");
        for (double x : thresholds)
            if (!(x > 0.0)) throw std::invalid_argument("PowerBinarySpec: thresholds must be > 0");
        for (std::size_t i = 1; i < n; ++i)
            if (!(expiries[i] > expiries[i - 1]))
                throw std::invalid_argument("PowerBinarySpec: expiries must be strictly increasing");
    }
    std::size_t order() const { return thresholds.size(); }
};

// Payoff condition 1(s x^beta > s xi); reduces to a first-order threshold.
struct GeneralBinaryCondition {
    double beta;
    double xi;
    Sign s;

    GeneralBinaryCondition(double beta_, double xi_, Sign s_) : beta(beta_), xi(xi_), s(s_) {
        if (beta == 0.0) throw std::invalid_argument("GeneralBinaryCondition: constant condition");
        if (!(xi > 0.0)) throw std::invalid_argument("GeneralBinaryCondition: xi must be > 0");
    }
};

// e^{mu(alpha)(T-t)} x^alpha, the unconditional power payoff.
PriceResult power_standard_price(double x, double t, double T, double alpha,
                                 const MarketParams& params);

PriceResult power_binary_price(double x, double t, const PowerBinarySpec& spec,
                               const MarketParams& params);

// Maps 1(s x^beta > s xi) onto an order-1 spec with threshold xi^{1/beta}.
PowerBinarySpec reduce_general_condition(double alpha, const GeneralBinaryCondition& cond,
                                         double expiry);

PriceResult second_order_binary_price(double x, double t, const PowerBinarySpec& spec,
                                      const MarketParams& params);

PriceResult nth_order_binary_price(double x, double t, const PowerBinarySpec& spec,
                                   const MarketParams& params);

}  // namespace pricer
