#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pricer {

// Constant market coefficients of the pricing PDE. Negative rates are fine,
// zero volatility is not: every closed form here divides by sigma.
struct MarketParams {
    double r;      // risk-free rate, 1/year
    double q;      // dividend yield, 1/year
    double sigma;  // volatility, 1/sqrt(year)

    MarketParams(double r_, double q_, double sigma_) : r(r_), q(q_), sigma(sigma_) {
        if (!(sigma > 0.0)) throw std::invalid_argument("MarketParams: sigma must be > 0");
        if (!std::isfinite(r) || !std::isfinite(q) || !std::isfinite(sigma))
            throw std::invalid_argument("MarketParams: r, q, sigma must be finite");
    }
};

// Valuation time / expiry pair in year fractions.
struct Horizon {
    double t;
    double T;

    Horizon(double t_, double T_) : t(t_), T(T_) {
        if (!(t >= 0.0) || !(t <= T)) throw std::invalid_argument("Horizon: need 0 <= t <= T");
    }
    double tau() const { return T - t; }
};

// Ordered monitoring dates T_1 < ... < T_n.
struct MonitoringSchedule {
    std::vector<double> times;

    explicit MonitoringSchedule(std::vector<double> ts) : times(std::move(ts)) {
        if (times.size() < 2)
            throw std::invalid_argument("MonitoringSchedule: need at least 2 dates");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::invalid_argument("MonitoringSchedule: dates must be strictly increasing");
    }
    std::size_t size() const { return times.size(); }
};

// Asset fixings already observed, aligned with the leading monitoring dates.
struct FixedObservations {
    std::vector<double> fixings;

    FixedObservations() = default;
    explicit FixedObservations(std::vector<double> xs) : fixings(std::move(xs)) {
        for (double x : fixings)
            if (!(x > 0.0)) throw std::invalid_argument("FixedObservations: fixings must be > 0");
    }
    std::size_t count() const { return fixings.size(); }
    double log_product() const {
        double s = 0.0;
        for (double x : fixings) s += std::log(x);
        return s;
    }
};

// Upper/lower branch selector of a binary condition.
enum class Sign : int { Up = +1, Down = -1 };

inline double sign_value(Sign s) { return s == Sign::Up ? 1.0 : -1.0; }
inline Sign flip(Sign s) { return s == Sign::Up ? Sign::Down : Sign::Up; }

// Price plus named intermediate scalars; stderr is populated by the Monte
// Carlo oracle only.
struct PriceResult {
    double value = 0.0;
    std::map<std::string, double> diagnostics;
    std::optional<double> stderr_estimate;
};

// Growth exponent of a power payoff x^alpha under the pricing PDE:
// mu(alpha) = (alpha-1) r - alpha q + sigma^2/2 (alpha^2 - alpha).
inline double mu(const MarketParams& p, double alpha) {
    return (alpha - 1.0) * p.r - alpha * p.q + 0.5 * p.sigma * p.sigma * (alpha * alpha - alpha);
}

// Argument of the normal CDF in the first-order binary price:
// [ln(x/xi) + (r - q - sigma^2/2 + alpha sigma^2) tau] / (sigma sqrt(tau)).
inline double d_arg(double x_over_xi, const MarketParams& p, double alpha, double tau) {
    if (!(x_over_xi > 0.0)) throw std::invalid_argument("d_arg: x/xi must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("d_arg: degenerate horizon");
    const double s2 = p.sigma * p.sigma;
    return (std::log(x_over_xi) + (p.r - p.q - 0.5 * s2 + alpha * s2) * tau) /
           (p.sigma * std::sqrt(tau));
}

// Two-timescale variant: tau1 multiplies the drift, tau1p sets the scale.
// Reduces to d_arg when tau1 == tau1p.
inline double delta_arg(double y, double tau1, double tau1p, double alpha, const MarketParams& p) {
    if (!(y > 0.0)) throw std::invalid_argument("delta_arg: y must be > 0");
    if (!(tau1p > 0.0)) throw std::invalid_argument("delta_arg: degenerate variance");
    const double s2 = p.sigma * p.sigma;
    return (std::log(y) + (p.r - p.q - 0.5 * s2 + alpha * s2) * tau1) /
           (p.sigma * std::sqrt(tau1p));
}

}  // namespace pricer
