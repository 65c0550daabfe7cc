#include "pricer/contract.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace pricer {

std::string contract_kind_name(ContractKind kind) {
    switch (kind) {
        case ContractKind::PowerStandard: return "power_standard";
        case ContractKind::PowerBinary: return "power_binary";
        case ContractKind::NthBinary: return "nth_binary";
        case ContractKind::NormDist: return "normdist";
        case ContractKind::SavingsPlan: return "savings_plan";
        case ContractKind::GeoAsianFixed: return "geo_asian_fixed";
        case ContractKind::GeoAsianFloating: return "geo_asian_floating";
        case ContractKind::ContAsianFixed: return "cont_asian_fixed";
        case ContractKind::ContAsianFloating: return "cont_asian_floating";
    }
    throw std::invalid_argument("unknown contract kind");
}

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

class Fields {
  public:
    explicit Fields(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            const std::string stripped = trim(line.substr(0, line.find('#')));
            if (stripped.empty()) continue;
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos)
                throw ContractParseError(no, "line " + std::to_string(no) +
                                                 ": expected key = value, got '" + stripped + "'");
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ContractParseError(no, "line " + std::to_string(no) + ": empty key or value");
            if (entries_.count(key))
                throw ContractParseError(no, "line " + std::to_string(no) + ": duplicate key '" +
                                                 key + "' (first at line " +
                                                 std::to_string(entries_[key].line) + ")");
            entries_[key] = {value, no};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const RawEntry& get(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ContractParseError(0, "missing required key '" + key + "'");
        used_.insert(key);
        return it->second;
    }

    double number(const std::string& key) {
        const RawEntry& e = get(key);
        return parse_number(e.value, e.line, key);
    }

    double number_or(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return number(key);
    }

    std::vector<double> number_list(const std::string& key) {
        const RawEntry& e = get(key);
        std::vector<double> out;
        for (const std::string& item : split(e.value))
            out.push_back(parse_number(item, e.line, key));
        return out;
    }

    std::vector<Sign> sign_list(const std::string& key) {
        const RawEntry& e = get(key);
        std::vector<Sign> out;
        for (const std::string& item : split(e.value)) {
            if (item == "up")
                out.push_back(Sign::Up);
            else if (item == "down")
                out.push_back(Sign::Down);
            else
                throw ContractParseError(e.line, "line " + std::to_string(e.line) + ": key '" +
                                                     key + "': expected up or down, got '" + item +
                                                     "'");
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& [key, entry] : entries_)
            if (!used_.count(key))
                throw ContractParseError(entry.line, "line " + std::to_string(entry.line) +
                                                         ": unknown key '" + key + "'");
    }

  private:
    static std::vector<std::string> split(const std::string& value) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(value);
        while (std::getline(in, item, ',')) out.push_back(trim(item));
        return out;
    }

    static double parse_number(const std::string& text, int line, const std::string& key) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size())
            throw ContractParseError(line, "line " + std::to_string(line) + ": key '" + key +
                                               "': not a number: '" + text + "'");
        return v;
    }

    std::map<std::string, RawEntry> entries_;
    std::set<std::string> used_;
};

MarketParams read_market(Fields& f) {
    return MarketParams(f.number("r"), f.number("q"), f.number("sigma"));
}

}  // namespace

ContractSpec parse_contract_text(const std::string& text) {
    Fields f(text);
    ContractSpec spec;

    const RawEntry& kind = f.get("kind");
    spec.debug_bump = f.number_or("debug_bump", 0.0);
    try {
        if (kind.value == "power_standard") {
            spec.kind = ContractKind::PowerStandard;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.alpha = f.number("alpha");
            spec.T = f.number("T");
        } else if (kind.value == "power_binary") {
            spec.kind = ContractKind::PowerBinary;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.binary = PowerBinarySpec(f.number("alpha"), {f.number("xi")},
                                          f.sign_list("sign"), {f.number("T")});
        } else if (kind.value == "nth_binary") {
            spec.kind = ContractKind::NthBinary;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.binary = PowerBinarySpec(f.number("alpha"), f.number_list("thresholds"),
                                          f.sign_list("signs"), f.number_list("expiries"));
        } else if (kind.value == "normdist") {
            spec.kind = ContractKind::NormDist;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.tau = f.number("tau");
            spec.normdist =
                NormDistPayoffSpec(f.number("beta"), f.number("i"), f.number("K"),
                                   f.number("alpha"), f.number("tau1"), f.number("tau1p"));
        } else if (kind.value == "savings_plan") {
            spec.kind = ContractKind::SavingsPlan;
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.savings = SavingsPlanSpec(f.number("r_d"), f.number("r_f"), f.number("x0"),
                                           f.number("T"), f.number("sigma"));
        } else if (kind.value == "geo_asian_fixed") {
            spec.kind = ContractKind::GeoAsianFixed;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.asian_fixed =
                GeoAsianFixedSpec(MonitoringSchedule(f.number_list("schedule")), f.number("K"),
                                  FixedObservations(f.number_list("fixings")));
        } else if (kind.value == "geo_asian_floating") {
            spec.kind = ContractKind::GeoAsianFloating;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.asian_floating =
                GeoAsianFloatingSpec(MonitoringSchedule(f.number_list("schedule")),
                                     FixedObservations(f.number_list("fixings")));
        } else if (kind.value == "cont_asian_fixed") {
            spec.kind = ContractKind::ContAsianFixed;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.J = f.number("J");
            spec.K = f.number("K");
            spec.T = f.number("T");
        } else if (kind.value == "cont_asian_floating") {
            spec.kind = ContractKind::ContAsianFloating;
            spec.market = read_market(f);
            spec.x = f.number("x");
            spec.t = f.number_or("t", 0.0);
            spec.J = f.number("J");
            spec.T = f.number("T");
        } else {
            throw ContractParseError(kind.line, "line " + std::to_string(kind.line) +
                                                    ": unknown kind '" + kind.value + "'");
        }
    } catch (const std::invalid_argument& err) {
        // Domain-type constructors validate invariants; surface them as
        // parse-time failures naming the offending field.
        throw ContractParseError(0, err.what());
    }
    f.reject_unknown();
    return spec;
}

ContractSpec parse_contract_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open contract file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_contract_text(buf.str());
}

PriceResult price_contract(const ContractSpec& spec) {
    PriceResult res;
    switch (spec.kind) {
        case ContractKind::PowerStandard:
            res = power_standard_price(spec.x, spec.t, spec.T, spec.alpha, *spec.market);
            break;
        case ContractKind::PowerBinary:
            res = power_binary_price(spec.x, spec.t, *spec.binary, *spec.market);
            break;
        case ContractKind::NthBinary:
            res = nth_order_binary_price(spec.x, spec.t, *spec.binary, *spec.market);
            break;
        case ContractKind::NormDist:
            res = normdist_price(spec.x, spec.tau, *spec.normdist, *spec.market);
            break;
        case ContractKind::SavingsPlan:
            res = savings_plan_price(spec.x, spec.t, *spec.savings);
            break;
        case ContractKind::GeoAsianFixed:
            res = discrete_geo_asian_fixed_price(spec.x, spec.t, *spec.asian_fixed, *spec.market);
            break;
        case ContractKind::GeoAsianFloating:
            res = discrete_geo_asian_floating_price(spec.x, spec.t, *spec.asian_floating,
                                                    *spec.market);
            break;
        case ContractKind::ContAsianFixed:
            res = continuous_geo_asian_fixed_price(spec.x, AsianState(spec.J, spec.t), spec.K,
                                                   spec.T, *spec.market);
            break;
        case ContractKind::ContAsianFloating:
            res = continuous_geo_asian_floating_price(spec.x, AsianState(spec.J, spec.t), spec.T,
                                                      *spec.market);
            break;
    }
    res.value += spec.debug_bump;
    return res;
}

}  // namespace pricer
