#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pricer/contract.hpp"
#include "pricer/oracles.hpp"
#include "pricer/products.hpp"

namespace {

// Exit codes: 0 ok/pass, 1 validation FAIL, 2 parse, 3 numeric,
// 4 unsupported, 5 I/O.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitIo = 5;

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PRICER_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 0;
}

void print_result(const pricer::PriceResult& res, const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::json j;
        j["value"] = res.value;
        for (const auto& [k, v] : res.diagnostics) j["diagnostics"][k] = v;
        if (res.stderr_estimate) j["stderr"] = *res.stderr_estimate;
        out << j.dump(2) << "\n";
        return;
    }
    out << "value = " << fmt(res.value) << "\n";
    for (const auto& [k, v] : res.diagnostics) out << k << " = " << fmt(v) << "\n";
    if (res.stderr_estimate) out << "stderr = " << fmt(*res.stderr_estimate) << "\n";
}

// Quadrature route for the contract kinds whose payoff is a function of the
// prices at finitely many dates; throws UnsupportedError otherwise.
pricer::PriceResult quad_oracle_price(const pricer::ContractSpec& c,
                                      const pricer::QuadratureConfig& cfg) {
    using namespace pricer;
    switch (c.kind) {
        case ContractKind::PowerStandard: {
            const double alpha = c.alpha;
            return greens_price([alpha](double z) { return std::pow(z, alpha); }, c.x, c.T - c.t,
                                *c.market, cfg);
        }
        case ContractKind::PowerBinary: {
            const PowerBinarySpec& spec = *c.binary;
            const double alpha = spec.alpha, xi = spec.thresholds[0];
            const double s = sign_value(spec.signs[0]);
            return greens_price(
                [alpha, xi, s](double z) {
                    return s * z > s * xi ? std::pow(z, alpha) : 0.0;
                },
                c.x, spec.expiries[0] - c.t, *c.market, cfg, {xi});
        }
        case ContractKind::NormDist: {
            const NormDistPayoffSpec spec = *c.normdist;
            const MarketParams params = *c.market;
            std::vector<double> breakpoints;
            if (spec.tau1p == 0.0 && spec.i != 0.0) {
                // Indicator limit: the payoff jumps where the argument of the
                // degenerate CDF changes sign, which includes the drift shift.
                const double s2 = params.sigma * params.sigma;
                const double shift =
                    (params.r - params.q - 0.5 * s2 + spec.alpha * s2) * spec.tau1;
                breakpoints.push_back(std::exp((std::log(spec.K) - shift) / spec.i));
            }
            return greens_price(
                [spec, params](double z) { return normdist_payoff(z, spec, params); }, c.x, c.tau,
                params, cfg, breakpoints);
        }
        case ContractKind::NthBinary: {
            const PowerBinarySpec& spec = *c.binary;
            if (spec.order() > 5) throw UnsupportedError("nth_binary order > 5 for quad oracle");
            auto payoff = [&spec](const std::vector<double>& prices) {
                for (std::size_t i = 0; i < spec.order(); ++i) {
                    const double s = sign_value(spec.signs[i]);
                    if (!(s * prices[i] > s * spec.thresholds[i])) return 0.0;
                }
                return std::pow(prices.back(), spec.alpha);
            };
            auto breakpoints = [&spec](const std::vector<double>& prefix) {
                return std::vector<double>{spec.thresholds[prefix.size()]};
            };
            return nested_greens_price(payoff, c.x, c.t, spec.expiries, *c.market, cfg,
                                       breakpoints);
        }
        case ContractKind::SavingsPlan: {
            const SavingsPlanSpec& s = *c.savings;
            const MarketParams pde(s.r_f, 2.0 * s.r_f - s.r_d - s.sigma * s.sigma, s.sigma);
            const double dom = std::exp(s.r_d * s.T), for_ = std::exp(s.r_f * s.T) / s.x0;
            return greens_price(
                [dom, for_](double z) { return std::max(dom / z, for_); }, c.x, s.T - c.t, pde,
                cfg, {s.strike()});
        }
        case ContractKind::GeoAsianFixed:
        case ContractKind::GeoAsianFloating: {
            const bool fixed = c.kind == ContractKind::GeoAsianFixed;
            const MonitoringSchedule& schedule =
                fixed ? c.asian_fixed->schedule : c.asian_floating->schedule;
            const FixedObservations& fixings =
                fixed ? c.asian_fixed->fixings : c.asian_floating->fixings;
            const std::size_t n = schedule.size(), m = fixings.count();
            if (n - m > 5) throw UnsupportedError("too many remaining dates for quad oracle");
            const std::vector<double> dates(schedule.times.begin() + m, schedule.times.end());
            const double log_fixed = fixings.log_product();
            const double K = fixed ? c.asian_fixed->K : 0.0;
            auto payoff = [n, log_fixed, K, fixed](const std::vector<double>& prices) {
                double sum_log = log_fixed;
                for (double p : prices) sum_log += std::log(p);
                const double avg = std::exp(sum_log / n);
                return fixed ? std::max(avg - K, 0.0) : std::max(prices.back() - avg, 0.0);
            };
            const std::size_t depth = dates.size();
            auto breakpoints = [n, log_fixed, K, fixed,
                                depth](const std::vector<double>& prefix) -> std::vector<double> {
                if (prefix.size() + 1 != depth) return {};
                double log_known = log_fixed;
                for (double p : prefix) log_known += std::log(p);
                if (fixed) return {std::exp((n * std::log(K) - log_known))};
                // x - (known * x)^{1/n} kinks at x = known^{1/(n-1)}.
                return {std::exp(log_known / (n - 1.0))};
            };
            return nested_greens_price(payoff, c.x, c.t, dates, *c.market, cfg, breakpoints);
        }
        default:
            throw UnsupportedError("contract kind not supported by the quadrature oracle: " +
                                   pricer::contract_kind_name(c.kind));
    }
}

int cmd_price(const std::string& path, const std::string& format, const std::string& out_path) {
    pricer::ContractSpec spec;
    try {
        spec = pricer::parse_contract_file(path);
    } catch (const pricer::ContractParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    pricer::PriceResult res;
    try {
        res = pricer::price_contract(spec);
        if (!std::isfinite(res.value)) throw std::runtime_error("non-finite price");
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return kExitIo;
        }
        print_result(res, format, out);
        return out.good() ? kExitPass : kExitIo;
    }
    print_result(res, format, std::cout);
    return kExitPass;
}

int cmd_validate(const std::string& path, const std::string& oracle, std::uint64_t paths,
                 std::uint64_t seed, double rel_tol) {
    pricer::ContractSpec spec;
    try {
        spec = pricer::parse_contract_file(path);
    } catch (const pricer::ContractParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    bool pass = true;
    try {
        const pricer::PriceResult closed = pricer::price_contract(spec);
        std::cout << "closed_form = " << fmt(closed.value) << "\n";

        if (oracle == "quad" || oracle == "both") {
            const pricer::QuadratureConfig cfg(rel_tol, 10, 10.0);
            const pricer::PriceResult quad = quad_oracle_price(spec, cfg);
            const double gap = std::abs(closed.value - quad.value);
            const double rel_gap = gap / std::max(std::abs(quad.value), 1e-12);
            const bool ok = rel_gap <= 10.0 * rel_tol;
            std::cout << "quad = " << fmt(quad.value) << "\n"
                      << "quad_abs_gap = " << fmt(gap) << "\n"
                      << "quad_rel_gap = " << fmt(rel_gap) << "\n"
                      << "quad_check = " << (ok ? "PASS" : "FAIL") << "\n";
            pass = pass && ok;
        }
        if (oracle == "mc" || oracle == "both") {
            const pricer::McConfig cfg(paths, seed, true, 1024);
            const pricer::PriceResult mc = pricer::mc_price(spec, cfg);
            const double se = mc.stderr_estimate.value_or(0.0);
            const double gap = std::abs(closed.value - mc.value);
            const bool ok = gap <= 3.0 * se;
            std::cout << "mc = " << fmt(mc.value) << "\n"
                      << "mc_stderr = " << fmt(se) << "\n"
                      << "mc_abs_gap = " << fmt(gap) << "\n"
                      << "mc_gap_over_se = " << fmt(se > 0.0 ? gap / se : 0.0) << "\n"
                      << "mc_check = " << (ok ? "PASS" : "FAIL") << "\n";
            pass = pass && ok;
        }
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitPass : kExitFail;
}

int cmd_converge(const std::string& product, const std::string& ladder_text, double X, double K,
                 double T, double r, double q, double sigma, const std::string& out_path) {
    std::vector<int> ladder;
    std::istringstream in(ladder_text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            ladder.push_back(std::stoi(item));
        } catch (const std::exception&) {
            std::cerr << "bad ladder entry: '" << item << "'\n";
            return kExitParse;
        }
    }
    std::vector<pricer::ConvergenceRow> rows;
    try {
        const pricer::MarketParams params(r, q, sigma);
        const auto kind = product == "floating" ? pricer::AsianStrikeKind::Floating
                                                : pricer::AsianStrikeKind::Fixed;
        rows = pricer::convergence_study(kind, ladder, X, K, T, params);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }

    std::ostringstream csv;
    csv << "n,V_n,V_continuous,abs_error,rel_error,error_ratio_vs_prev\n";
    for (const auto& row : rows) {
        csv << row.n << "," << fmt(row.v_n) << "," << fmt(row.v_continuous) << ","
            << fmt(row.abs_error) << "," << fmt(row.rel_error) << ",";
        if (row.error_ratio_vs_prev) csv << fmt(*row.error_ratio_vs_prev);
        csv << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return kExitIo;
        }
        out << csv.str();
        out.flush();
        return out.good() ? kExitPass : kExitIo;
    }
    std::cout << csv.str();
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form option pricing with oracle validation"};
    app.require_subcommand(1);

    std::string file, format = "text", out_path;
    auto* price = app.add_subcommand("price", "Price a contract file");
    price->add_option("file", file, "contract file")->required();
    price->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    price->add_option("--out", out_path, "write the report to a file");

    std::string v_file, v_oracle = "both";
    std::uint64_t v_paths = 200000, v_seed = default_seed();
    double v_rel_tol = 1e-8;
    auto* validate = app.add_subcommand("validate", "Compare the closed form against oracles");
    validate->add_option("file", v_file, "contract file")->required();
    validate->add_option("--oracle", v_oracle)->check(CLI::IsMember({"mc", "quad", "both"}));
    validate->add_option("--paths", v_paths, "Monte Carlo paths");
    validate->add_option("--seed", v_seed, "Monte Carlo seed (default 0 or PRICER_SEED)");
    validate->add_option("--rel-tol", v_rel_tol, "quadrature relative tolerance");

    std::string c_product = "fixed", c_ladder = "8,16,32,64,128", c_out;
    double c_x = 100.0, c_k = 100.0, c_T = 1.0, c_r = 0.05, c_q = 0.0, c_sigma = 0.2;
    auto* converge = app.add_subcommand("converge", "Discrete-to-continuous Asian convergence");
    converge->add_option("--product", c_product)->check(CLI::IsMember({"fixed", "floating"}));
    converge->add_option("--ladder", c_ladder, "comma-separated monitoring counts");
    converge->add_option("--x", c_x, "spot");
    converge->add_option("--strike", c_k, "fixed strike K");
    converge->add_option("--maturity", c_T, "maturity T");
    converge->add_option("--rate", c_r, "risk-free rate");
    converge->add_option("--dividend", c_q, "dividend yield");
    converge->add_option("--sigma", c_sigma, "volatility");
    converge->add_option("--out", c_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (price->parsed()) return cmd_price(file, format, out_path);
    if (validate->parsed()) return cmd_validate(v_file, v_oracle, v_paths, v_seed, v_rel_tol);
    return cmd_converge(c_product, c_ladder, c_x, c_k, c_T, c_r, c_q, c_sigma, c_out);
}
