#pragma once

#include <optional>
#include <vector>

#include "pricer/core.hpp"

namespace pricer {

// FX contract returning the better of domestic-rate and foreign-rate accrual
// on one unit of domestic currency, valued in foreign currency.
struct SavingsPlanSpec {
    double r_d;    // domestic rate, 1/year
    double r_f;    // foreign rate, 1/year
    double x0;     // initial exchange rate, domestic per foreign
    double T;      // maturity, years
    double sigma;  // exchange-rate volatility

    SavingsPlanSpec(double r_d_, double r_f_, double x0_, double T_, double sigma_)
        : r_d(r_d_), r_f(r_f_), x0(x0_), T(T_), sigma(sigma_) {
        if (!(x0 > 0.0)) throw std::invalid_argument("SavingsPlanSpec: x0 must be > 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("SavingsPlanSpec: sigma must be > 0");
        if (!(T > 0.0)) throw std::invalid_argument("SavingsPlanSpec: T must be > 0");
    }
    double strike() const;  // x0 e^{(r_d - r_f) T}
};

struct GeoAsianFixedSpec {
    MonitoringSchedule schedule;
    double K;
    FixedObservations fixings;

    GeoAsianFixedSpec(MonitoringSchedule s, double K_, FixedObservations f)
        : schedule(std::move(s)), K(K_), fixings(std::move(f)) {
        if (!(K > 0.0)) throw std::invalid_argument("GeoAsianFixedSpec: K must be > 0");
    }
};

struct GeoAsianFloatingSpec {
    MonitoringSchedule schedule;
    FixedObservations fixings;

    GeoAsianFloatingSpec(MonitoringSchedule s, FixedObservations f)
        : schedule(std::move(s)), fixings(std::move(f)) {}
};

// Running geometric average exp((1/t) int_0^t ln X_s ds) and its clock.
struct AsianState {
    double J;
    double t;

    AsianState(double J_, double t_) : J(J_), t(t_) {
        if (!(J > 0.0)) throw std::invalid_argument("AsianState: J must be > 0");
        if (t < 0.0) throw std::invalid_argument("AsianState: t must be >= 0");
    }
};

PriceResult savings_plan_price(double X, double t, const SavingsPlanSpec& spec);

PriceResult discrete_geo_asian_fixed_price(double X, double t, const GeoAsianFixedSpec& spec,
                                           const MarketParams& params);

PriceResult discrete_geo_asian_floating_price(double X, double t, const GeoAsianFloatingSpec& spec,
                                              const MarketParams& params);

PriceResult continuous_geo_asian_fixed_price(double X, const AsianState& state, double K, double T,
                                             const MarketParams& params);

PriceResult continuous_geo_asian_floating_price(double X, const AsianState& state, double T,
                                                const MarketParams& params);

enum class AsianStrikeKind { Fixed, Floating };

struct ConvergenceRow {
    int n = 0;
    double v_n = 0.0;
    double v_continuous = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    std::optional<double> error_ratio_vs_prev;
};

// Discrete price on an equally spaced n-date schedule over [0, T] at t = 0
// (spot recorded as the first fixing), against the continuous-average limit.
std::vector<ConvergenceRow> convergence_study(AsianStrikeKind kind, const std::vector<int>& ladder,
                                              double X, double K, double T,
                                              const MarketParams& params);

}  // namespace pricer
