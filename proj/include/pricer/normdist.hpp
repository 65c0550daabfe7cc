#pragma once

#include "pricer/core.hpp"

namespace pricer {

// Terminal payoff X^beta * Phi(delta(X^i / K, tau1, tau1p, alpha)) — the
// building block that keeps the backward recursion through monitoring dates
// in closed form.
struct NormDistPayoffSpec {
    double beta;       // outer power
    double i;          // inner exponent
    double K;          // composite strike level (units: currency^i)
    double alpha;      // drift-shift parameter
    double tau1;       // drift time, years
    double tau1p;      // variance time, years

    NormDistPayoffSpec(double beta_, double i_, double K_, double alpha_, double tau1_,
                       double tau1p_)
        : beta(beta_), i(i_), K(K_), alpha(alpha_), tau1(tau1_), tau1p(tau1p_) {
        if (!(K > 0.0)) throw std::invalid_argument("NormDistPayoffSpec: K must be > 0");
        if (tau1p < 0.0) throw std::invalid_argument("NormDistPayoffSpec: tau1p must be >= 0");
    }
};

// Terminal payoff value (tau = 0 branch).
double normdist_payoff(double X, const NormDistPayoffSpec& spec, const MarketParams& params);

PriceResult normdist_price(double X, double tau, const NormDistPayoffSpec& spec,
                           const MarketParams& params);

}  // namespace pricer
