#include "doctest.h"

#include <cmath>

#include "pricer/contract.hpp"

using namespace pricer;

namespace {

const char* kCashBinary = R"(# cash-or-nothing digital
kind = power_binary
r = 0.05
q = 0.02
sigma = 0.2
x = 100
t = 0
alpha = 0
xi = 105
sign = up
T = 1
)";

}  // namespace

TEST_CASE("parse and price a power binary contract") {
    const ContractSpec spec = parse_contract_text(kCashBinary);
    CHECK(spec.kind == ContractKind::PowerBinary);
    const PriceResult parsed = price_contract(spec);
    const MarketParams p(0.05, 0.02, 0.2);
    const PriceResult direct =
        power_binary_price(100.0, 0.0, PowerBinarySpec(0.0, {105.0}, {Sign::Up}, {1.0}), p);
    CHECK(parsed.value == direct.value);  // bit-exact: same computation path
}

TEST_CASE("parse each remaining kind") {
    const ContractSpec std_spec = parse_contract_text(
        "kind = power_standard\nr = 0.05\nq = 0\nsigma = 0.2\nx = 100\nalpha = 2\nT = 1\n");
    CHECK(price_contract(std_spec).value ==
          doctest::Approx(10000.0 * std::exp(0.09)).epsilon(1e-13));

    const ContractSpec nth = parse_contract_text(
        "kind = nth_binary\nr = 0.05\nq = 0\nsigma = 0.2\nx = 100\nt = 0\nalpha = 1\n"
        "thresholds = 95, 100, 110\nsigns = up, up, down\nexpiries = 0.4, 0.9, 1.6\n");
    CHECK(nth.binary->order() == 3);
    CHECK(price_contract(nth).value > 0.0);

    const ContractSpec nd = parse_contract_text(
        "kind = normdist\nr = 0.05\nq = 0.01\nsigma = 0.2\nx = 100\ntau = 0.5\n"
        "beta = 0.5\ni = 2\nK = 10000\nalpha = 0.25\ntau1 = 0.5\ntau1p = 0.3\n");
    CHECK(price_contract(nd).value > 0.0);

    const ContractSpec sp = parse_contract_text(
        "kind = savings_plan\nr_d = 0.05\nr_f = 0.03\nx0 = 1\nsigma = 0.1\nT = 1\nx = 1\nt = 0\n");
    CHECK(price_contract(sp).value == doctest::Approx(1.03987761168).epsilon(1e-10));

    const ContractSpec gaf = parse_contract_text(
        "kind = geo_asian_fixed\nr = 0.05\nq = 0\nsigma = 0.2\nx = 100\nt = 0\n"
        "schedule = 0, 0.25, 0.5, 0.75, 1\nK = 100\nfixings = 100\n");
    CHECK(price_contract(gaf).value > 0.0);

    const ContractSpec gafl = parse_contract_text(
        "kind = geo_asian_floating\nr = 0.05\nq = 0\nsigma = 0.2\nx = 100\nt = 0\n"
        "schedule = 0, 0.5, 1\nfixings = 100\n");
    CHECK(price_contract(gafl).value > 0.0);

    const ContractSpec caf = parse_contract_text(
        "kind = cont_asian_fixed\nr = 0.05\nq = 0\nsigma = 0.2\nx = 100\nt = 0\n"
        "J = 100\nK = 100\nT = 1\n");
    CHECK(price_contract(caf).value == doctest::Approx(5.54681863).epsilon(1e-7));

    const ContractSpec cafl = parse_contract_text(
        "kind = cont_asian_floating\nr = 0.05\nq = 0.02\nsigma = 0.2\nx = 100\nt = 0.5\n"
        "J = 95\nT = 1\n");
    CHECK(price_contract(cafl).value > 0.0);
}

TEST_CASE("unknown and duplicate keys are rejected with line numbers") {
    const std::string with_unknown = std::string(kCashBinary) + "bogus_key = 1\n";
    try {
        parse_contract_text(with_unknown);
        FAIL("expected ContractParseError");
    } catch (const ContractParseError& e) {
        CHECK(e.line == 12);
        CHECK(std::string(e.what()).find("unknown key 'bogus_key'") != std::string::npos);
    }

    const std::string with_dup = std::string(kCashBinary) + "x = 90\n";
    try {
        parse_contract_text(with_dup);
        FAIL("expected ContractParseError");
    } catch (const ContractParseError& e) {
        CHECK(e.line == 12);
        CHECK(std::string(e.what()).find("duplicate key 'x'") != std::string::npos);
    }
}

TEST_CASE("malformed values are line-anchored") {
    try {
        parse_contract_text("kind = power_standard\nr = 0.05\nq = 0\nsigma = banana\n"
                            "x = 100\nalpha = 1\nT = 1\n");
        FAIL("expected ContractParseError");
    } catch (const ContractParseError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("sigma") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_contract_text("kind = power_standard\nno equals sign here\n"),
                    ContractParseError);
    CHECK_THROWS_AS(parse_contract_text("kind = nonsense\n"), ContractParseError);
}

TEST_CASE("invariant violations surface as parse errors naming the field") {
    try {
        parse_contract_text("kind = power_standard\nr = 0.05\nq = 0\nsigma = -0.2\n"
                            "x = 100\nalpha = 1\nT = 1\n");
        FAIL("expected ContractParseError");
    } catch (const ContractParseError& e) {
        CHECK(std::string(e.what()).find("sigma") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_contract_text("kind = power_standard\nr = 0.05\nq = 0\nsigma = 0.2\n"
                                        "x = 100\nalpha = 1\n"),
                    ContractParseError);  // missing T
}

TEST_CASE("sign parsing") {
    CHECK_THROWS_AS(
        parse_contract_text("kind = power_binary\nr = 0.05\nq = 0\nsigma = 0.2\nx = 100\n"
                            "alpha = 0\nxi = 105\nsign = sideways\nT = 1\n"),
        ContractParseError);
}

TEST_CASE("debug_bump shifts the closed-form value") {
    const ContractSpec plain = parse_contract_text(kCashBinary);
    const ContractSpec bumped =
        parse_contract_text(std::string(kCashBinary) + "debug_bump = 0.25\n");
    CHECK(price_contract(bumped).value ==
          doctest::Approx(price_contract(plain).value + 0.25).epsilon(1e-15));
}

TEST_CASE("kind names round-trip") {
    CHECK(contract_kind_name(ContractKind::GeoAsianFixed) == "geo_asian_fixed");
    CHECK(contract_kind_name(ContractKind::SavingsPlan) == "savings_plan");
}
