#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pricer/contract.hpp"
#include "pricer/core.hpp"

namespace pricer {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    int max_refinements = 8;
    double half_width = 10.0;  // standardized-Gaussian truncation, >= 8

    QuadratureConfig() = default;
    QuadratureConfig(double rel_tol_, int max_refinements_, double half_width_)
        : rel_tol(rel_tol_), max_refinements(max_refinements_), half_width(half_width_) {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be > 0");
        if (!(half_width >= 8.0))
            throw std::invalid_argument("QuadratureConfig: half_width must be >= 8");
    }
};

struct McConfig {
    std::uint64_t paths = 100000;
    std::uint64_t seed = 0;
    bool antithetic = true;
    int steps_per_interval = 1024;  // continuous-average log integration

    McConfig() = default;
    McConfig(std::uint64_t paths_, std::uint64_t seed_, bool antithetic_, int steps_)
        : paths(paths_), seed(seed_), antithetic(antithetic_), steps_per_interval(steps_) {
        if (paths < 2) throw std::invalid_argument("McConfig: paths must be >= 2");
    }
};

// Discounted expectation of payoff(X_T) by quadrature against the lognormal
// transition kernel, refined by panel doubling until successive estimates
// agree to rel_tol. `breakpoints` lists terminal prices where the payoff is
// non-smooth; the integration range is split there.
PriceResult greens_price(const std::function<double(double)>& payoff, double x, double tau,
                         const MarketParams& params, const QuadratureConfig& cfg,
                         const std::vector<double>& breakpoints = {});

// Backward composition of the single-date kernel through `dates` (all > t).
// `payoff` receives the simulated prices at the dates in order. An optional
// breakpoint callback maps the realized prefix to kink locations of the next
// date's integrand. Depth is capped at 5.
PriceResult nested_greens_price(
    const std::function<double(const std::vector<double>&)>& payoff, double x, double t,
    const std::vector<double>& dates, const MarketParams& params, const QuadratureConfig& cfg,
    const std::function<std::vector<double>(const std::vector<double>&)>& breakpoints = nullptr);

// Antithetic Monte Carlo over the parsed contract, exact lognormal stepping
// between monitoring dates. Deterministic for a fixed seed; path randomness
// is a pure function of (seed, path index, step index).
PriceResult mc_price(const ContractSpec& contract, const McConfig& cfg);

}  // namespace pricer
