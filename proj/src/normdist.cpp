#include "pricer/normdist.hpp"

#include <cmath>

#include "pricer/gaussian.hpp"

namespace pricer {

double normdist_payoff(double X, const NormDistPayoffSpec& spec, const MarketParams& params) {
    if (!(X > 0.0)) throw std::invalid_argument("normdist_payoff: X must be > 0");
    const double outer = std::pow(X, spec.beta);
    if (spec.tau1p > 0.0)
        return outer *
               norm_cdf(delta_arg(std::pow(X, spec.i) / spec.K, spec.tau1, spec.tau1p, spec.alpha,
                                  params));
    // Zero-variance limit: the CDF factor collapses to an indicator.
    const double s2 = params.sigma * params.sigma;
    const double num = std::log(std::pow(X, spec.i) / spec.K) +
                       (params.r - params.q - 0.5 * s2 + spec.alpha * s2) * spec.tau1;
    return outer * (num > 0.0 ? 1.0 : (num < 0.0 ? 0.0 : 0.5));
}

PriceResult normdist_price(double X, double tau, const NormDistPayoffSpec& spec,
                           const MarketParams& params) {
    if (!(X > 0.0)) throw std::invalid_argument("normdist_price: X must be > 0");
    if (tau < 0.0) throw std::invalid_argument("normdist_price: tau must be >= 0");

    PriceResult res;
    if (tau == 0.0) {
        res.value = normdist_payoff(X, spec, params);
        return res;
    }
    const double var_time = spec.i * spec.i * tau + spec.tau1p;
    if (!(var_time > 0.0)) throw std::invalid_argument("normdist_price: degenerate variance");

    // Expanded affine form of d1; total in (i tau + tau1), removable
    // singularity of the weighted-alpha form eliminated.
    const double s2 = params.sigma * params.sigma;
    const double num = spec.i * std::log(X) - std::log(spec.K) +
                       (params.r - params.q - 0.5 * s2) * (spec.i * tau + spec.tau1) +
                       s2 * (spec.i * spec.beta * tau + spec.alpha * spec.tau1);
    const double d1 = num / (params.sigma * std::sqrt(var_time));
    const double m = mu(params, spec.beta);
    res.value = std::pow(X, spec.beta) * std::exp(m * tau) * norm_cdf(d1);
    res.diagnostics["d1"] = d1;
    res.diagnostics["mu"] = m;
    return res;
}

}  // namespace pricer
