#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pricer/binaries.hpp"
#include "pricer/contract.hpp"
#include "pricer/gaussian.hpp"
#include "pricer/products.hpp"

namespace py = pybind11;
using namespace pricer;

namespace {

std::vector<Sign> parse_signs(const std::vector<std::string>& names) {
    std::vector<Sign> out;
    for (const std::string& name : names) {
        if (name == "up")
            out.push_back(Sign::Up);
        else if (name == "down")
            out.push_back(Sign::Down);
        else
            throw std::invalid_argument("sign must be 'up' or 'down', got '" + name + "'");
    }
    return out;
}

py::dict to_dict(const PriceResult& res) {
    py::dict out;
    out["value"] = res.value;
    py::dict diag;
    for (const auto& [k, v] : res.diagnostics) diag[py::str(k)] = v;
    out["diagnostics"] = diag;
    if (res.stderr_estimate) out["stderr"] = *res.stderr_estimate;
    return out;
}

}  // namespace

PYBIND11_MODULE(_powerbinary, m) {
    m.doc() = "Closed-form pricing of power binaries, savings plans and geometric Asian options";

    m.def("norm_cdf", &norm_cdf, py::arg("x"));
    m.def("binorm_cdf", &binorm_cdf, py::arg("a"), py::arg("b"), py::arg("rho"));

    m.def(
        "power_standard_price",
        [](double x, double t, double T, double alpha, double r, double q, double sigma) {
            return power_standard_price(x, t, T, alpha, MarketParams(r, q, sigma)).value;
        },
        py::arg("x"), py::arg("t"), py::arg("T"), py::arg("alpha"), py::arg("r"), py::arg("q"),
        py::arg("sigma"));

    m.def(
        "power_binary_price",
        [](double x, double t, double alpha, const std::vector<double>& thresholds,
           const std::vector<std::string>& signs, const std::vector<double>& expiries, double r,
           double q, double sigma) {
            const PowerBinarySpec spec(alpha, thresholds, parse_signs(signs), expiries);
            const MarketParams p(r, q, sigma);
            return spec.order() == 1 ? power_binary_price(x, t, spec, p).value
                                     : nth_order_binary_price(x, t, spec, p).value;
        },
        py::arg("x"), py::arg("t"), py::arg("alpha"), py::arg("thresholds"), py::arg("signs"),
        py::arg("expiries"), py::arg("r"), py::arg("q"), py::arg("sigma"));

    m.def(
        "savings_plan_price",
        [](double X, double t, double r_d, double r_f, double x0, double T, double sigma) {
            return savings_plan_price(X, t, SavingsPlanSpec(r_d, r_f, x0, T, sigma)).value;
        },
        py::arg("X"), py::arg("t"), py::arg("r_d"), py::arg("r_f"), py::arg("x0"), py::arg("T"),
        py::arg("sigma"));

    m.def(
        "geo_asian_fixed_price",
        [](double X, double t, const std::vector<double>& schedule, double K,
           const std::vector<double>& fixings, double r, double q, double sigma) {
            const GeoAsianFixedSpec spec(MonitoringSchedule(schedule), K,
                                         FixedObservations(fixings));
            return discrete_geo_asian_fixed_price(X, t, spec, MarketParams(r, q, sigma)).value;
        },
        py::arg("X"), py::arg("t"), py::arg("schedule"), py::arg("K"), py::arg("fixings"),
        py::arg("r"), py::arg("q"), py::arg("sigma"));

    m.def(
        "geo_asian_floating_price",
        [](double X, double t, const std::vector<double>& schedule,
           const std::vector<double>& fixings, double r, double q, double sigma) {
            const GeoAsianFloatingSpec spec{MonitoringSchedule(schedule),
                                            FixedObservations(fixings)};
            return discrete_geo_asian_floating_price(X, t, spec, MarketParams(r, q, sigma)).value;
        },
        py::arg("X"), py::arg("t"), py::arg("schedule"), py::arg("fixings"), py::arg("r"),
        py::arg("q"), py::arg("sigma"));

    m.def(
        "cont_asian_fixed_price",
        [](double X, double J, double t, double K, double T, double r, double q, double sigma) {
            return continuous_geo_asian_fixed_price(X, AsianState(J, t), K, T,
                                                    MarketParams(r, q, sigma))
                .value;
        },
        py::arg("X"), py::arg("J"), py::arg("t"), py::arg("K"), py::arg("T"), py::arg("r"),
        py::arg("q"), py::arg("sigma"));

    m.def(
        "cont_asian_floating_price",
        [](double X, double J, double t, double T, double r, double q, double sigma) {
            return continuous_geo_asian_floating_price(X, AsianState(J, t), T,
                                                       MarketParams(r, q, sigma))
                .value;
        },
        py::arg("X"), py::arg("J"), py::arg("t"), py::arg("T"), py::arg("r"), py::arg("q"),
        py::arg("sigma"));

    m.def(
        "price_contract_text",
        [](const std::string& text) { return to_dict(price_contract(parse_contract_text(text))); },
        py::arg("text"), "Parse a key = value contract description and price it");

    py::register_exception<ContractParseError>(m, "ContractParseError");
}
