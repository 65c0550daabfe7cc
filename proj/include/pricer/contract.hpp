#pragma once

#include <optional>
#include <string>

#include "pricer/binaries.hpp"
#include "pricer/core.hpp"
#include "pricer/normdist.hpp"
#include "pricer/products.hpp"

namespace pricer {

enum class ContractKind {
    PowerStandard,
    PowerBinary,
    NthBinary,
    NormDist,
    SavingsPlan,
    GeoAsianFixed,
    GeoAsianFloating,
    ContAsianFixed,
    ContAsianFloating,
};

std::string contract_kind_name(ContractKind kind);

// One parsed contract plus its valuation point. Exactly one payload member
// is populated, matching `kind`.
struct ContractSpec {
    ContractKind kind = ContractKind::PowerStandard;
    std::optional<MarketParams> market;  // absent for savings plans
    double x = 0.0;                      // spot (exchange rate for savings plans)
    double t = 0.0;                      // valuation time
    double debug_bump = 0.0;             // test hook: added to the closed-form value

    // power_standard / normdist share scalar fields.
    double alpha = 0.0;
    double T = 0.0;
    std::optional<PowerBinarySpec> binary;
    std::optional<NormDistPayoffSpec> normdist;
    double tau = 0.0;  // remaining time for normdist contracts
    std::optional<SavingsPlanSpec> savings;
    std::optional<GeoAsianFixedSpec> asian_fixed;
    std::optional<GeoAsianFloatingSpec> asian_floating;
    double J = 0.0;  // running average for continuous Asians
    double K = 0.0;  // strike for continuous fixed-strike Asians
};

// Raised on malformed contract text; `line` is 1-based, 0 when the failure
// is not tied to a single line (e.g. a missing key).
struct ContractParseError : std::runtime_error {
    int line;
    ContractParseError(int line_, const std::string& what) : std::runtime_error(what), line(line_) {}
};

// Flat key=value schema, one contract per file; '#' comments; list values
// comma-separated; signs spelled up/down. Unknown and duplicate keys are
// rejected with line-anchored messages.
ContractSpec parse_contract_text(const std::string& text);
ContractSpec parse_contract_file(const std::string& path);

// Closed-form price of the parsed contract (dispatch over kind).
PriceResult price_contract(const ContractSpec& spec);

}  // namespace pricer
