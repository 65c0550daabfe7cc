#include <cmath>
#include <cstdint>
#include <functional>

#include "pricer/gaussian.hpp"
#include "pricer/oracles.hpp"

namespace pricer {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Path randomness as a pure function of (seed, path, step): deterministic,
// order-independent, safe to evaluate in any partition of the path set.
double gauss_draw(std::uint64_t seed, std::uint64_t path, std::uint64_t step) {
    const std::uint64_t h =
        mix64(mix64(seed) ^ mix64(path * 0x8538ecb5bd456ea3ULL + 0x514e2b3a3c2b5ca1ULL) ^
              mix64(step * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
    const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1p-53;
    return inv_norm_cdf(u);
}

struct PathRng {
    std::uint64_t seed;
    std::uint64_t path;
    bool flip;
    std::uint64_t step = 0;

    double next() {
        const double g = gauss_draw(seed, path, step++);
        return flip ? -g : g;
    }
};

double step_price(double x, double dt, const MarketParams& p, double g) {
    const double a = p.r - p.q - 0.5 * p.sigma * p.sigma;
    return x * std::exp(a * dt + p.sigma * std::sqrt(dt) * g);
}

// Discounted payoff of one simulated path of the given contract.
double sample_path(const ContractSpec& c, const McConfig& cfg, PathRng& rng) {
    switch (c.kind) {
        case ContractKind::PowerStandard: {
            const double tau = c.T - c.t;
            const double xT = step_price(c.x, tau, *c.market, rng.next());
            return std::exp(-c.market->r * tau) * std::pow(xT, c.alpha);
        }
        case ContractKind::PowerBinary:
        case ContractKind::NthBinary: {
            const PowerBinarySpec& spec = *c.binary;
            double x = c.x, from = c.t;
            for (std::size_t i = 0; i < spec.order(); ++i) {
                x = step_price(x, spec.expiries[i] - from, *c.market, rng.next());
                from = spec.expiries[i];
                const double s = sign_value(spec.signs[i]);
                if (!(s * x > s * spec.thresholds[i])) return 0.0;
            }
            return std::exp(-c.market->r * (spec.expiries.back() - c.t)) * std::pow(x, spec.alpha);
        }
        case ContractKind::NormDist: {
            const double xT = step_price(c.x, c.tau, *c.market, rng.next());
            return std::exp(-c.market->r * c.tau) * normdist_payoff(xT, *c.normdist, *c.market);
        }
        case ContractKind::SavingsPlan: {
            // Foreign risk-neutral measure: drift sigma^2 + r_d - r_f on X,
            // discounting at r_f.
            const SavingsPlanSpec& s = *c.savings;
            const double tau = s.T - c.t;
            const double a = s.r_d - s.r_f + 0.5 * s.sigma * s.sigma;
            const double xT = c.x * std::exp(a * tau + s.sigma * std::sqrt(tau) * rng.next());
            const double payoff =
                std::max(std::exp(s.r_d * s.T) / xT, std::exp(s.r_f * s.T) / s.x0);
            return std::exp(-s.r_f * tau) * payoff;
        }
        case ContractKind::GeoAsianFixed:
        case ContractKind::GeoAsianFloating: {
            const MonitoringSchedule& schedule = c.kind == ContractKind::GeoAsianFixed
                                                     ? c.asian_fixed->schedule
                                                     : c.asian_floating->schedule;
            const FixedObservations& fixings = c.kind == ContractKind::GeoAsianFixed
                                                   ? c.asian_fixed->fixings
                                                   : c.asian_floating->fixings;
            const std::size_t n = schedule.size(), m = fixings.count();
            double sum_log = fixings.log_product();
            double x = c.x, from = c.t;
            for (std::size_t l = m; l < n; ++l) {
                x = step_price(x, schedule.times[l] - from, *c.market, rng.next());
                from = schedule.times[l];
                sum_log += std::log(x);
            }
            const double avg = std::exp(sum_log / n);
            const double payoff = c.kind == ContractKind::GeoAsianFixed
                                      ? std::max(avg - c.asian_fixed->K, 0.0)
                                      : std::max(x - avg, 0.0);
            return std::exp(-c.market->r * (schedule.times[n - 1] - c.t)) * payoff;
        }
        case ContractKind::ContAsianFixed:
        case ContractKind::ContAsianFloating: {
            const double tau = c.T - c.t;
            const int steps = std::max(cfg.steps_per_interval, 2);
            const double dt = tau / steps;
            double x = c.x;
            double integral = 0.5 * std::log(x) * dt;
            for (int i = 1; i <= steps; ++i) {
                x = step_price(x, dt, *c.market, rng.next());
                integral += (i == steps ? 0.5 : 1.0) * std::log(x) * dt;
            }
            const double avg = std::exp((c.t * std::log(c.J) + integral) / c.T);
            const double payoff = c.kind == ContractKind::ContAsianFixed
                                      ? std::max(avg - c.K, 0.0)
                                      : std::max(x - avg, 0.0);
            return std::exp(-c.market->r * tau) * payoff;
        }
    }
    throw std::invalid_argument("mc_price: unsupported contract kind");
}

}  // namespace

PriceResult mc_price(const ContractSpec& contract, const McConfig& cfg) {
    if (cfg.paths < 2) throw std::invalid_argument("mc_price: paths must be >= 2");

    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t count = 0;
    if (cfg.antithetic) {
        const std::uint64_t pairs = cfg.paths / 2;
        for (std::uint64_t p = 0; p < pairs; ++p) {
            PathRng a{cfg.seed, p, false};
            PathRng b{cfg.seed, p, true};
            const double v =
                0.5 * (sample_path(contract, cfg, a) + sample_path(contract, cfg, b));
            sum += v;
            sum_sq += v * v;
        }
        count = pairs;
    } else {
        for (std::uint64_t p = 0; p < cfg.paths; ++p) {
            PathRng rng{cfg.seed, p, false};
            const double v = sample_path(contract, cfg, rng);
            sum += v;
            sum_sq += v * v;
        }
        count = cfg.paths;
    }
    const double mean = sum / count;
    const double var = std::max(sum_sq / count - mean * mean, 0.0);
    PriceResult res;
    res.value = mean;
    res.stderr_estimate = std::sqrt(var / count);
    res.diagnostics["samples"] = static_cast<double>(count);
    return res;
}

}  // namespace pricer
