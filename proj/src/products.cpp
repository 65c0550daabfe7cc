#include "pricer/products.hpp"

#include <algorithm>
#include <cmath>

#include "pricer/binaries.hpp"
#include "pricer/gaussian.hpp"

namespace pricer {

double SavingsPlanSpec::strike() const { return x0 * std::exp((r_d - r_f) * T); }

PriceResult savings_plan_price(double X, double t, const SavingsPlanSpec& spec) {
    if (!(X > 0.0)) throw std::invalid_argument("savings_plan_price: X must be > 0");
    if (t < 0.0 || t > spec.T) throw std::invalid_argument("savings_plan_price: need 0 <= t <= T");

    PriceResult res;
    const double dom_leg = std::exp(spec.r_d * spec.T) / X;
    const double for_leg = std::exp(spec.r_f * spec.T) / spec.x0;
    if (t == spec.T) {
        res.value = std::max(dom_leg, for_leg);
        return res;
    }

    // The payoff splits at K into a -1-power leg (domestic accrual) and a
    // 0-power leg (foreign accrual); the pricing PDE for the foreign value is
    // Black-Scholes with rate r_f and dividend 2 r_f - r_d - sigma^2.
    const double K = spec.strike();
    const MarketParams pde(spec.r_f, 2.0 * spec.r_f - spec.r_d - spec.sigma * spec.sigma,
                           spec.sigma);
    const double leg_dn =
        power_binary_price(X, t, PowerBinarySpec(-1.0, {K}, {Sign::Down}, {spec.T}), pde).value;
    const double leg_up =
        power_binary_price(X, t, PowerBinarySpec(0.0, {K}, {Sign::Up}, {spec.T}), pde).value;
    res.value = std::exp(spec.r_d * spec.T) * leg_dn +
                std::exp(spec.r_f * spec.T) / spec.x0 * leg_up;

    // Direct closed form as an internal cross-check of the same value.
    const double tau = spec.T - t;
    const double srt = spec.sigma * std::sqrt(tau);
    const double d2 =
        (std::log(X / K) + (spec.r_d - spec.r_f + 0.5 * spec.sigma * spec.sigma) * tau) / srt;
    const double d1 = d2 - srt;
    const double direct = std::exp(spec.r_d * t) / X * norm_cdf(-d1) +
                          std::exp(spec.r_f * t) / spec.x0 * norm_cdf(d2);
    res.diagnostics["d1"] = d1;
    res.diagnostics["d2"] = d2;
    res.diagnostics["route_gap"] = std::abs(res.value - direct);
    return res;
}

namespace {

// Shared geometry of a partially observed averaging window: remaining
// intervals (t, T_{m+1}], (T_{m+1}, T_{m+2}], ..., (T_{n-1}, T_n] with the
// per-interval averaging weight w = (n-l+1)/n carried by the l-th date.
struct RemainingWindow {
    int n = 0;
    int m = 0;  // recorded fixings
    std::vector<double> dtau;
    std::vector<double> w;
};

RemainingWindow remaining_window(double t, const MonitoringSchedule& schedule,
                                 const FixedObservations& fixings) {
    RemainingWindow win;
    win.n = static_cast<int>(schedule.size());
    win.m = static_cast<int>(fixings.count());
    if (win.m < 1 || win.m >= win.n)
        throw std::invalid_argument("asian pricer: fixing count inconsistent with t");
    if (!(schedule.times[win.m - 1] <= t) || !(t < schedule.times[win.m]))
        throw std::invalid_argument("asian pricer: fixing count inconsistent with t");
    double prev = t;
    for (int l = win.m + 1; l <= win.n; ++l) {
        win.dtau.push_back(schedule.times[l - 1] - prev);
        win.w.push_back(static_cast<double>(win.n - l + 1) / win.n);
        prev = schedule.times[l - 1];
    }
    return win;
}

}  // namespace

PriceResult discrete_geo_asian_fixed_price(double X, double t, const GeoAsianFixedSpec& spec,
                                           const MarketParams& params) {
    if (!(X > 0.0)) throw std::invalid_argument("asian pricer: X must be > 0");
    const RemainingWindow win = remaining_window(t, spec.schedule, spec.fixings);
    const int n = win.n, k = win.n - win.m;

    const double a = params.r - params.q - 0.5 * params.sigma * params.sigma;
    double sum_w = 0.0, sum_w2 = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < win.dtau.size(); ++i) {
        sum_w += win.w[i] * win.dtau[i];
        sum_w2 += win.w[i] * win.w[i] * win.dtau[i];
        theta += mu(params, win.w[i]) * win.dtau[i];
    }
    const double dev = params.sigma * std::sqrt(sum_w2);  // Delta_k / n
    const double log_avg = (spec.fixings.log_product() + k * std::log(X)) / n;
    const double d2 = (log_avg - std::log(spec.K) + a * sum_w) / dev;
    const double d1 = d2 + dev;
    const double tail = spec.schedule.times[n - 1] - t;

    PriceResult res;
    res.value = std::exp(log_avg + theta) * norm_cdf(d1) -
                spec.K * std::exp(-params.r * tail) * norm_cdf(d2);
    res.diagnostics["d1"] = d1;
    res.diagnostics["d2"] = d2;
    res.diagnostics["Delta_k"] = n * dev;
    res.diagnostics["theta_k"] = theta;
    return res;
}

PriceResult discrete_geo_asian_floating_price(double X, double t, const GeoAsianFloatingSpec& spec,
                                              const MarketParams& params) {
    if (!(X > 0.0)) throw std::invalid_argument("asian pricer: X must be > 0");
    const RemainingWindow win = remaining_window(t, spec.schedule, spec.fixings);
    const int n = win.n, k = win.n - win.m;

    // The exercise gap ln X_T - ln(average) loads the interval increments
    // with complementary weights c = 1 - w.
    const double a = params.r - params.q - 0.5 * params.sigma * params.sigma;
    double sum_c = 0.0, sum_c2 = 0.0, sum_cw = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < win.dtau.size(); ++i) {
        const double c = 1.0 - win.w[i];
        sum_c += c * win.dtau[i];
        sum_c2 += c * c * win.dtau[i];
        sum_cw += c * win.w[i] * win.dtau[i];
        theta += mu(params, win.w[i]) * win.dtau[i];
    }
    const double dev = params.sigma * std::sqrt(sum_c2);
    const double s2 = params.sigma * params.sigma;
    const double log_avg = (spec.fixings.log_product() + k * std::log(X)) / n;
    const double gap0 = win.m * std::log(X) / n - spec.fixings.log_product() / n;
    const double d1 = (gap0 + a * sum_c + s2 * sum_cw) / dev;  // average-leg argument
    const double d2 = d1 + dev;                                // asset-leg argument
    const double tail = spec.schedule.times[n - 1] - t;

    PriceResult res;
    res.value = X * std::exp(-params.q * tail) * norm_cdf(d2) -
                std::exp(log_avg + theta) * norm_cdf(d1);
    res.diagnostics["d1"] = d1;
    res.diagnostics["d2"] = d2;
    res.diagnostics["Delta"] = dev;
    res.diagnostics["theta_k"] = theta;
    return res;
}

PriceResult continuous_geo_asian_fixed_price(double X, const AsianState& state, double K, double T,
                                             const MarketParams& params) {
    if (!(X > 0.0)) throw std::invalid_argument("asian pricer: X must be > 0");
    if (!(K > 0.0)) throw std::invalid_argument("asian pricer: K must be > 0");
    if (!(state.t <= T)) throw std::invalid_argument("asian pricer: need t <= T");

    PriceResult res;
    if (state.t == T) {
        res.value = std::max(state.J - K, 0.0);
        return res;
    }
    const double t = state.t, tau = T - t;
    const double rstar = (params.r - params.q - 0.5 * params.sigma * params.sigma) * tau / (2.0 * T);
    const double sstar = params.sigma * tau / (std::sqrt(3.0) * T);
    const double log_comp = (t * std::log(state.J) + tau * std::log(X)) / T;
    const double d1 =
        (log_comp - std::log(K) + (rstar + sstar * sstar) * tau) / (sstar * std::sqrt(tau));
    const double d2 = d1 - sstar * std::sqrt(tau);
    res.value = std::exp(-params.r * tau) *
                (std::exp(log_comp + (rstar + 0.5 * sstar * sstar) * tau) * norm_cdf(d1) -
                 K * norm_cdf(d2));
    res.diagnostics["d1"] = d1;
    res.diagnostics["d2"] = d2;
    res.diagnostics["r_star"] = rstar;
    res.diagnostics["sigma_star"] = sstar;
    return res;
}

PriceResult continuous_geo_asian_floating_price(double X, const AsianState& state, double T,
                                                const MarketParams& params) {
    if (!(X > 0.0)) throw std::invalid_argument("asian pricer: X must be > 0");
    if (!(state.t <= T)) throw std::invalid_argument("asian pricer: need t <= T");

    PriceResult res;
    if (state.t == T) {
        res.value = std::max(X - state.J, 0.0);
        return res;
    }
    const double t = state.t;
    const double s2 = params.sigma * params.sigma;
    const double T2 = T * T - t * t;
    const double T3 = T * T * T - t * t * t;
    const double scale = std::sqrt(3.0) / (params.sigma * std::sqrt(T3));
    const double core = t * std::log(X / state.J) + (params.r - params.q + 0.5 * s2) * T2 / 2.0;
    const double d2 = scale * core;                            // asset leg
    const double d1 = scale * (core - s2 * T3 / (3.0 * T));    // average leg
    const double theta = -params.q * (T - t) -
                         (params.r - params.q + 0.5 * s2) * T2 / (2.0 * T) +
                         s2 * T3 / (6.0 * T * T);
    res.value = std::exp(-params.q * (T - t)) * X * norm_cdf(d2) -
                std::pow(state.J, t / T) * std::pow(X, (T - t) / T) * std::exp(theta) *
                    norm_cdf(d1);
    res.diagnostics["d1"] = d1;
    res.diagnostics["d2"] = d2;
    res.diagnostics["theta_star"] = theta;
    return res;
}

std::vector<ConvergenceRow> convergence_study(AsianStrikeKind kind, const std::vector<int>& ladder,
                                              double X, double K, double T,
                                              const MarketParams& params) {
    for (int n : ladder)
        if (n < 2) throw std::invalid_argument("convergence_study: ladder entries must be >= 2");

    const AsianState state(X, 0.0);
    const double v_cont = kind == AsianStrikeKind::Fixed
                              ? continuous_geo_asian_fixed_price(X, state, K, T, params).value
                              : continuous_geo_asian_floating_price(X, state, T, params).value;

    std::vector<ConvergenceRow> rows;
    for (int n : ladder) {
        std::vector<double> times;
        for (int i = 0; i < n; ++i) times.push_back(T * i / (n - 1.0));
        MonitoringSchedule schedule(std::move(times));
        FixedObservations first({X});
        ConvergenceRow row;
        row.n = n;
        if (kind == AsianStrikeKind::Fixed) {
            GeoAsianFixedSpec spec(schedule, K, first);
            row.v_n = discrete_geo_asian_fixed_price(X, 0.0, spec, params).value;
        } else {
            GeoAsianFloatingSpec spec(schedule, first);
            row.v_n = discrete_geo_asian_floating_price(X, 0.0, spec, params).value;
        }
        row.v_continuous = v_cont;
        row.abs_error = std::abs(row.v_n - v_cont);
        row.rel_error = v_cont != 0.0 ? row.abs_error / std::abs(v_cont) : row.abs_error;
        if (!rows.empty() && rows.back().abs_error > 0.0)
            row.error_ratio_vs_prev = row.abs_error / rows.back().abs_error;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pricer
