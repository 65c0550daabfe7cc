#include "pricer/binaries.hpp"

#include <cmath>

#include "pricer/gaussian.hpp"

namespace pricer {

namespace {

// Payoff-side indicator; the boundary x == xi counts as out (strict inequality).
bool indicator(Sign s, double x, double xi) {
    return sign_value(s) * x > sign_value(s) * xi;
}

}  // namespace

PriceResult power_standard_price(double x, double t, double T, double alpha,
                                 const MarketParams& params) {
    if (!(x > 0.0)) throw std::invalid_argument("power_standard_price: x must be > 0");
    if (!(t <= T)) throw std::invalid_argument("power_standard_price: t must not exceed T");
    const double m = mu(params, alpha);
    PriceResult res;
    res.value = std::exp(m * (T - t)) * std::pow(x, alpha);
    res.diagnostics["mu"] = m;
    return res;
}

PriceResult power_binary_price(double x, double t, const PowerBinarySpec& spec,
                               const MarketParams& params) {
    if (spec.order() != 1)
        throw std::invalid_argument("power_binary_price: spec must have order 1");
    if (!(x > 0.0)) throw std::invalid_argument("power_binary_price: x must be > 0");
    const double T = spec.expiries[0];
    if (!(t <= T)) throw std::invalid_argument("power_binary_price: t must not exceed expiry");

    PriceResult res;
    const double m = mu(params, spec.alpha);
    res.diagnostics["mu"] = m;
    if (t == T) {
        res.value = indicator(spec.signs[0], x, spec.thresholds[0]) ? std::pow(x, spec.alpha) : 0.0;
        return res;
    }
    const double d = d_arg(x / spec.thresholds[0], params, spec.alpha, T - t);
    res.diagnostics["d"] = d;
    res.value = std::exp(m * (T - t)) * std::pow(x, spec.alpha) *
                norm_cdf(sign_value(spec.signs[0]) * d);
    return res;
}

PowerBinarySpec reduce_general_condition(double alpha, const GeneralBinaryCondition& cond,
                                         double expiry) {
    const Sign s = (cond.beta > 0.0) ? cond.s : flip(cond.s);
    const double zeta = std::pow(cond.xi, 1.0 / cond.beta);
    return PowerBinarySpec(alpha, {zeta}, {s}, {expiry});
}

PriceResult second_order_binary_price(double x, double t, const PowerBinarySpec& spec,
                                      const MarketParams& params) {
    if (spec.order() != 2)
        throw std::invalid_argument("second_order_binary_price: spec must have order 2");
    if (!(x > 0.0)) throw std::invalid_argument("second_order_binary_price: x must be > 0");
    const double T0 = spec.expiries[0], T1 = spec.expiries[1];
    if (!(t <= T0)) throw std::invalid_argument("second_order_binary_price: t must not exceed T_0");

    if (t == T0) {
        // At the first expiry the outer condition resolves and the contract
        // drops to first order.
        if (!indicator(spec.signs[0], x, spec.thresholds[0])) return PriceResult{};
        PowerBinarySpec inner(spec.alpha, {spec.thresholds[1]}, {spec.signs[1]}, {T1});
        return power_binary_price(x, t, inner, params);
    }

    const double m = mu(params, spec.alpha);
    const double d0 = d_arg(x / spec.thresholds[0], params, spec.alpha, T0 - t);
    const double d1 = d_arg(x / spec.thresholds[1], params, spec.alpha, T1 - t);
    const double rho = std::sqrt((T0 - t) / (T1 - t));
    const double s0 = sign_value(spec.signs[0]), s1 = sign_value(spec.signs[1]);

    PriceResult res;
    res.value = std::exp(m * (T1 - t)) * std::pow(x, spec.alpha) *
                binorm_cdf(s0 * d0, s1 * d1, s0 * s1 * rho);
    res.diagnostics["mu"] = m;
    res.diagnostics["d0"] = d0;
    res.diagnostics["d1"] = d1;
    res.diagnostics["rho"] = rho;
    return res;
}

PriceResult nth_order_binary_price(double x, double t, const PowerBinarySpec& spec,
                                   const MarketParams& params) {
    const std::size_t n = spec.order();
    if (n > 16) throw std::invalid_argument("nth_order_binary_price: order too large");
    if (!(x > 0.0)) throw std::invalid_argument("nth_order_binary_price: x must be > 0");
    if (!(t <= spec.expiries[0]))
        throw std::invalid_argument("nth_order_binary_price: t must not exceed T_0");

    if (t == spec.expiries[0]) {
        if (!indicator(spec.signs[0], x, spec.thresholds[0])) return PriceResult{};
        if (n == 1) {
            PriceResult res;
            res.value = std::pow(x, spec.alpha);
            return res;
        }
        PowerBinarySpec tail(spec.alpha,
                             {spec.thresholds.begin() + 1, spec.thresholds.end()},
                             {spec.signs.begin() + 1, spec.signs.end()},
                             {spec.expiries.begin() + 1, spec.expiries.end()});
        return nth_order_binary_price(x, t, tail, params);
    }

    std::vector<double> limits(n);
    PriceResult res;
    for (std::size_t i = 0; i < n; ++i) {
        const double di = d_arg(x / spec.thresholds[i], params, spec.alpha, spec.expiries[i] - t);
        limits[i] = sign_value(spec.signs[i]) * di;
        res.diagnostics["d" + std::to_string(i)] = di;
    }
    const CorrelationStructure corr = markov_correlation(t, spec.expiries, spec.signs);
    const MvnResult nn = mvn_cdf(limits, corr);
    const double m = mu(params, spec.alpha);
    res.value = std::pow(x, spec.alpha) * std::exp(m * (spec.expiries[n - 1] - t)) * nn.value;
    res.diagnostics["mu"] = m;
    res.diagnostics["N_n"] = nn.value;
    res.diagnostics["N_n_err"] = nn.error_estimate;
    return res;
}

}  // namespace pricer
