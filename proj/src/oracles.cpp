#include "pricer/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "pricer/gaussian.hpp"
#include "pricer/quadrature.hpp"

namespace pricer {

namespace {

constexpr int kGlOrder = 12;

// Integration segments in standardized-Gaussian space: [-hw, hw] split at the
// z-images of the payoff breakpoints.
std::vector<double> segment_edges(double x, double tau, const MarketParams& params, double hw,
                                  const std::vector<double>& breakpoints) {
    const double drift = (params.r - params.q - 0.5 * params.sigma * params.sigma) * tau;
    const double vol = params.sigma * std::sqrt(tau);
    std::vector<double> edges = {-hw, hw};
    for (double b : breakpoints) {
        if (!(b > 0.0)) continue;
        const double z = (std::log(b / x) - drift) / vol;
        if (z > -hw && z < hw) edges.push_back(z);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

double kernel_integral(const std::function<double(double)>& payoff, double x, double tau,
                       const MarketParams& params, const std::vector<double>& edges,
                       int panels_per_segment, long* nodes) {
    const double drift = (params.r - params.q - 0.5 * params.sigma * params.sigma) * tau;
    const double vol = params.sigma * std::sqrt(tau);
    auto f = [&](double z) { return payoff(x * std::exp(drift + vol * z)) * norm_pdf(z); };
    double sum = 0.0;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        sum += composite_gl(f, edges[s], edges[s + 1], panels_per_segment, kGlOrder);
        if (nodes) *nodes += static_cast<long>(panels_per_segment) * kGlOrder;
    }
    return std::exp(-params.r * tau) * sum;
}

}  // namespace

PriceResult greens_price(const std::function<double(double)>& payoff, double x, double tau,
                         const MarketParams& params, const QuadratureConfig& cfg,
                         const std::vector<double>& breakpoints) {
    if (!(x > 0.0)) throw std::invalid_argument("greens_price: x must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("greens_price: tau must be > 0");

    const std::vector<double> edges = segment_edges(x, tau, params, cfg.half_width, breakpoints);
    long nodes = 0;
    int panels = 8;
    double prev = kernel_integral(payoff, x, tau, params, edges, panels, &nodes);
    for (int it = 0; it < cfg.max_refinements; ++it) {
        panels *= 2;
        const double cur = kernel_integral(payoff, x, tau, params, edges, panels, &nodes);
        const double scale = std::max(std::abs(cur), 1e-12);
        if (std::abs(cur - prev) < cfg.rel_tol * scale) {
            PriceResult res;
            res.value = cur;
            res.diagnostics["nodes"] = static_cast<double>(nodes);
            res.diagnostics["panels"] = static_cast<double>(panels);
            return res;
        }
        prev = cur;
    }
    throw std::runtime_error("greens_price: no convergence; last estimates " +
                             std::to_string(prev) + " after " +
                             std::to_string(cfg.max_refinements) + " refinements");
}

namespace {

double nested_value(const std::function<double(const std::vector<double>&)>& payoff,
                    std::vector<double>& prefix, double spot, double from, std::size_t level,
                    const std::vector<double>& dates, const MarketParams& params, double hw,
                    int panels,
                    const std::function<std::vector<double>(const std::vector<double>&)>& bps) {
    if (level == dates.size()) return payoff(prefix);
    const double tau = dates[level] - from;
    const double drift = (params.r - params.q - 0.5 * params.sigma * params.sigma) * tau;
    const double vol = params.sigma * std::sqrt(tau);

    std::vector<double> edges = {-hw, hw};
    if (bps)
        for (double b : bps(prefix)) {
            if (!(b > 0.0)) continue;
            const double z = (std::log(b / spot) - drift) / vol;
            if (z > -hw && z < hw) edges.push_back(z);
        }
    std::sort(edges.begin(), edges.end());

    auto f = [&](double z) {
        const double next = spot * std::exp(drift + vol * z);
        prefix.push_back(next);
        const double v = nested_value(payoff, prefix, next, dates[level], level + 1, dates, params,
                                      hw, panels, bps);
        prefix.pop_back();
        return v * norm_pdf(z);
    };
    double sum = 0.0;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s)
        sum += composite_gl(f, edges[s], edges[s + 1], panels, kGlOrder);
    return std::exp(-params.r * tau) * sum;
}

}  // namespace

PriceResult nested_greens_price(
    const std::function<double(const std::vector<double>&)>& payoff, double x, double t,
    const std::vector<double>& dates, const MarketParams& params, const QuadratureConfig& cfg,
    const std::function<std::vector<double>(const std::vector<double>&)>& breakpoints) {
    if (!(x > 0.0)) throw std::invalid_argument("nested_greens_price: x must be > 0");
    if (dates.empty()) throw std::invalid_argument("nested_greens_price: need at least one date");
    if (dates.size() > 5) throw std::invalid_argument("nested_greens_price: nesting too deep");
    double prev_date = t;
    for (double d : dates) {
        if (!(d > prev_date))
            throw std::invalid_argument("nested_greens_price: dates must increase past t");
        prev_date = d;
    }

    std::vector<double> prefix;
    int panels = 4;
    double prev = nested_value(payoff, prefix, x, t, 0, dates, params, cfg.half_width, panels,
                               breakpoints);
    for (int it = 0; it < cfg.max_refinements; ++it) {
        panels *= 2;
        const double cur = nested_value(payoff, prefix, x, t, 0, dates, params, cfg.half_width,
                                        panels, breakpoints);
        const double scale = std::max(std::abs(cur), 1e-12);
        if (std::abs(cur - prev) < cfg.rel_tol * scale) {
            PriceResult res;
            res.value = cur;
            res.diagnostics["panels"] = static_cast<double>(panels);
            return res;
        }
        prev = cur;
    }
    throw std::runtime_error("nested_greens_price: no convergence; last estimate " +
                             std::to_string(prev));
}

}  // namespace pricer
