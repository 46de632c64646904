#include "endopriv/experiment/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace endopriv::experiment {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
        }
    }
}

const json& require(const json& obj, const char* key, std::string_view where) {
    if (!obj.contains(key)) {
        throw ConfigError(std::string(where) + ": missing field '" + key + "'");
    }
    return obj.at(key);
}

double number(const json& v, std::string_view what) {
    if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(std::string(what) + " must be finite");
    return x;
}

template <class Int>
Int integer(const json& v, std::string_view what) {
    if (!v.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
    if constexpr (std::is_unsigned_v<Int>) {
        if (v.is_number_unsigned()) return v.get<Int>();
        if (v.get<long long>() < 0) throw ConfigError(std::string(what) + " must be nonnegative");
    }
    return v.get<Int>();
}

std::string text(const json& v, std::string_view what) {
    if (!v.is_string()) throw ConfigError(std::string(what) + " must be a string");
    return v.get<std::string>();
}

BenefitSpec parse_benefit(const json& j) {
    const std::string kind = text(require(j, "kind", "benefit"), "benefit.kind");
    BenefitSpec b;
    if (kind == "constant") {
        check_keys(j, {"kind", "q"}, "benefit");
        b.kind = BenefitSpec::Kind::constant;
        b.q = number(require(j, "q", "benefit"), "benefit.q");
    } else if (kind == "linear") {
        check_keys(j, {"kind", "c"}, "benefit");
        b.kind = BenefitSpec::Kind::linear;
        b.c = number(require(j, "c", "benefit"), "benefit.c");
    } else if (kind == "power") {
        check_keys(j, {"kind", "c", "s"}, "benefit");
        b.kind = BenefitSpec::Kind::power;
        b.c = number(require(j, "c", "benefit"), "benefit.c");
        b.s = number(require(j, "s", "benefit"), "benefit.s");
    } else if (kind == "sshaped") {
        check_keys(j, {"kind", "c", "a", "b"}, "benefit");
        b.kind = BenefitSpec::Kind::sshaped;
        b.c = number(require(j, "c", "benefit"), "benefit.c");
        b.a = number(require(j, "a", "benefit"), "benefit.a");
        b.b = number(require(j, "b", "benefit"), "benefit.b");
    } else {
        throw ConfigError("benefit.kind: unknown benefit '" + kind + "'");
    }
    return b;
}

json dump_benefit(const BenefitSpec& b) {
    switch (b.kind) {
        case BenefitSpec::Kind::constant: return {{"kind", "constant"}, {"q", b.q}};
        case BenefitSpec::Kind::linear: return {{"kind", "linear"}, {"c", b.c}};
        case BenefitSpec::Kind::power: return {{"kind", "power"}, {"c", b.c}, {"s", b.s}};
        case BenefitSpec::Kind::sshaped:
            return {{"kind", "sshaped"}, {"c", b.c}, {"a", b.a}, {"b", b.b}};
    }
    return {};
}

DistributionSpec parse_distribution(const json& j) {
    const std::string kind = text(require(j, "kind", "distribution"), "distribution.kind");
    DistributionSpec d;
    if (kind == "uniform") {
        check_keys(j, {"kind", "scale"}, "distribution");
        d.kind = DistributionSpec::Kind::uniform;
        if (j.contains("scale")) d.scale = number(j.at("scale"), "distribution.scale");
    } else if (kind == "personalized") {
        check_keys(j, {"kind", "v_m"}, "distribution");
        d.kind = DistributionSpec::Kind::personalized;
        d.v_m = number(require(j, "v_m", "distribution"), "distribution.v_m");
    } else {
        throw ConfigError("distribution.kind: unknown distribution '" + kind + "'");
    }
    return d;
}

json dump_distribution(const DistributionSpec& d) {
    if (d.kind == DistributionSpec::Kind::uniform) return {{"kind", "uniform"}, {"scale", d.scale}};
    return {{"kind", "personalized"}, {"v_m", d.v_m}};
}

std::variant<std::vector<double>, PriceRange> parse_prices(const json& j) {
    if (j.is_array()) {
        std::vector<double> out;
        for (const auto& p : j) out.push_back(number(p, "prices[]"));
        return out;
    }
    check_keys(j, {"min", "max", "count", "spacing"}, "prices");
    PriceRange r;
    r.min = number(require(j, "min", "prices"), "prices.min");
    r.max = number(require(j, "max", "prices"), "prices.max");
    r.count = integer<int>(require(j, "count", "prices"), "prices.count");
    if (j.contains("spacing")) {
        const std::string s = text(j.at("spacing"), "prices.spacing");
        if (s == "linear") {
            r.spacing = PriceRange::Spacing::linear;
        } else if (s == "log") {
            r.spacing = PriceRange::Spacing::log;
        } else {
            throw ConfigError("prices.spacing must be 'linear' or 'log'");
        }
    }
    return r;
}

SolverSettings parse_solver(const json& j) {
    check_keys(j, {"grid_points", "tolerance", "refine_tolerance", "interval_min_run"}, "solver");
    SolverSettings s;
    if (j.contains("grid_points")) s.grid_points = integer<int>(j.at("grid_points"), "solver.grid_points");
    if (j.contains("tolerance")) s.tolerance = number(j.at("tolerance"), "solver.tolerance");
    if (j.contains("refine_tolerance")) {
        s.refine_tolerance = number(j.at("refine_tolerance"), "solver.refine_tolerance");
    }
    if (j.contains("interval_min_run")) {
        s.interval_min_run = integer<int>(j.at("interval_min_run"), "solver.interval_min_run");
    }
    return s;
}

Method parse_method(const json& j) {
    const std::string m = text(j, "method");
    if (m == "auto") return Method::automatic;
    if (m == "analytic") return Method::analytic;
    if (m == "numeric") return Method::numeric;
    throw ConfigError("method must be 'auto', 'analytic' or 'numeric'");
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::automatic: return "auto";
        case Method::analytic: return "analytic";
        case Method::numeric: return "numeric";
    }
    return "auto";
}

}  // namespace

BenefitFunction BenefitSpec::build() const {
    switch (kind) {
        case Kind::constant: return ConstantBenefit{q};
        case Kind::linear: return LinearBenefit{c};
        case Kind::power: return PowerBenefit{c, s};
        case Kind::sshaped: return SShapedBenefit{c, a, b};
    }
    throw ConfigError("unknown benefit kind");
}

ValuationDistribution DistributionSpec::build() const {
    if (kind == Kind::uniform) return UniformValuation{scale};
    return PersonalizedValuation{v_m};
}

std::vector<double> ExperimentConfig::price_list() const {
    if (const auto* list = std::get_if<std::vector<double>>(&prices)) return *list;
    const auto& r = std::get<PriceRange>(prices);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(r.count, 0)));
    for (int i = 0; i < r.count; ++i) {
        const double t = r.count == 1 ? 0.0 : static_cast<double>(i) / (r.count - 1);
        if (r.spacing == PriceRange::Spacing::linear) {
            out.push_back(i == r.count - 1 && r.count > 1 ? r.max : r.min + t * (r.max - r.min));
        } else {
            out.push_back(i == r.count - 1 && r.count > 1
                              ? r.max
                              : std::exp(std::log(r.min) + t * (std::log(r.max) - std::log(r.min))));
        }
    }
    return out;
}

MarketConfig ExperimentConfig::market(double price) const {
    return MarketConfig(user_mass, budgets, price);
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    return user_mass == o.user_mass && budgets == o.budgets && benefit == o.benefit &&
           distribution == o.distribution && prices == o.prices && solver == o.solver &&
           method == o.method && outputs == o.outputs && oracle == o.oracle &&
           validation == o.validation;
}

void validate_config(const ExperimentConfig& c) {
    try {
        // Market invariants live in the MarketConfig constructor.
        (void)MarketConfig(c.user_mass, c.budgets, 1.0);
        c.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const auto& b = c.benefit;
    if (b.kind == BenefitSpec::Kind::constant) {
        if (!(b.q >= 0.0)) throw ConfigError("benefit.q must be nonnegative");
    } else if (!(b.c >= 0.0)) {
        throw ConfigError("benefit.c must be nonnegative");
    }
    if (b.kind == BenefitSpec::Kind::power && !(b.s >= 0.0 && b.s <= 1.0)) {
        throw ConfigError("benefit.s must lie in [0, 1]");
    }
    if (b.kind == BenefitSpec::Kind::sshaped && !(b.a > 0.0 && b.b > 0.0)) {
        throw ConfigError("benefit.a and benefit.b must be positive");
    }

    const auto& d = c.distribution;
    if (d.kind == DistributionSpec::Kind::uniform && !(d.scale > 0.0)) {
        throw ConfigError("distribution.scale must be positive");
    }
    if (d.kind == DistributionSpec::Kind::personalized && !(d.v_m > 0.0 && d.v_m < 1.0)) {
        throw ConfigError("distribution.v_m must lie in (0, 1)");
    }

    if (const auto* r = std::get_if<PriceRange>(&c.prices)) {
        if (r->count < 1) throw ConfigError("prices.count must be positive");
        if (!(r->min > 0.0)) throw ConfigError("prices.min must be positive");
        if (r->count > 1 && !(r->max > r->min)) throw ConfigError("prices.max must exceed prices.min");
    }
    const auto prices = c.price_list();
    if (prices.empty()) throw ConfigError("price list is empty");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0)) throw ConfigError("prices must be positive");
        if (i > 0 && !(prices[i] > prices[i - 1])) {
            throw ConfigError("prices must be strictly increasing");
        }
    }

    if (c.oracle) {
        if (c.oracle->n == 0) throw ConfigError("oracle.n must be positive");
        if (c.oracle->seeds.empty()) throw ConfigError("oracle.seeds must not be empty");
    }
    const auto& v = c.validation;
    if (!(v.tolerance > 0.0) || !(v.oracle_tolerance > 0.0)) {
        throw ConfigError("validation tolerances must be positive");
    }
}

ExperimentConfig parse_config(const std::string& text_in) {
    json j;
    try {
        j = json::parse(text_in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    check_keys(j,
               {"schema_version", "market", "benefit", "distribution", "prices", "solver", "method",
                "outputs", "oracle", "validation"},
               "config");
    const int version = integer<int>(require(j, "schema_version", "config"), "schema_version");
    if (version != kSchemaVersion) {
        throw ConfigError("unsupported schema_version " + std::to_string(version));
    }

    ExperimentConfig c;
    try {
        const json& m = require(j, "market", "config");
        check_keys(m, {"user_mass", "budgets"}, "market");
        c.user_mass = number(require(m, "user_mass", "market"), "market.user_mass");
        const json& budgets = require(m, "budgets", "market");
        if (!budgets.is_array()) throw ConfigError("market.budgets must be an array");
        for (const auto& b : budgets) c.budgets.push_back(number(b, "market.budgets[]"));

        c.benefit = parse_benefit(require(j, "benefit", "config"));
        c.distribution = j.contains("distribution") ? parse_distribution(j.at("distribution"))
                                                    : DistributionSpec{};
        c.prices = parse_prices(require(j, "prices", "config"));
        if (j.contains("solver")) c.solver = parse_solver(j.at("solver"));
        if (j.contains("method")) c.method = parse_method(j.at("method"));

        if (j.contains("outputs")) {
            const json& o = j.at("outputs");
            check_keys(o, {"csv_path", "svg_path"}, "outputs");
            if (o.contains("csv_path")) c.outputs.csv_path = text(o.at("csv_path"), "outputs.csv_path");
            if (o.contains("svg_path")) c.outputs.svg_path = text(o.at("svg_path"), "outputs.svg_path");
        }
        if (j.contains("oracle")) {
            const json& o = j.at("oracle");
            check_keys(o, {"n", "seeds"}, "oracle");
            OracleSpec spec;
            spec.n = integer<std::size_t>(require(o, "n", "oracle"), "oracle.n");
            const json& seeds = require(o, "seeds", "oracle");
            if (!seeds.is_array()) throw ConfigError("oracle.seeds must be an array");
            for (const auto& s : seeds) spec.seeds.push_back(integer<std::uint64_t>(s, "oracle.seeds[]"));
            c.oracle = spec;
        }
        if (j.contains("validation")) {
            const json& v = j.at("validation");
            check_keys(v, {"tolerance", "oracle_tolerance", "mutate_analytic_offset"}, "validation");
            if (v.contains("tolerance")) c.validation.tolerance = number(v.at("tolerance"), "validation.tolerance");
            if (v.contains("oracle_tolerance")) {
                c.validation.oracle_tolerance = number(v.at("oracle_tolerance"), "validation.oracle_tolerance");
            }
            if (v.contains("mutate_analytic_offset")) {
                c.validation.mutate_analytic_offset =
                    number(v.at("mutate_analytic_offset"), "validation.mutate_analytic_offset");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
    validate_config(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["market"] = {{"user_mass", c.user_mass}, {"budgets", c.budgets}};
    j["benefit"] = dump_benefit(c.benefit);
    j["distribution"] = dump_distribution(c.distribution);
    if (const auto* list = std::get_if<std::vector<double>>(&c.prices)) {
        j["prices"] = *list;
    } else {
        const auto& r = std::get<PriceRange>(c.prices);
        j["prices"] = {{"min", r.min},
                       {"max", r.max},
                       {"count", r.count},
                       {"spacing", r.spacing == PriceRange::Spacing::log ? "log" : "linear"}};
    }
    j["solver"] = {{"grid_points", c.solver.grid_points},
                   {"tolerance", c.solver.tolerance},
                   {"refine_tolerance", c.solver.refine_tolerance},
                   {"interval_min_run", c.solver.interval_min_run}};
    j["method"] = method_name(c.method);
    json outputs = json::object();
    if (c.outputs.csv_path) outputs["csv_path"] = *c.outputs.csv_path;
    if (c.outputs.svg_path) outputs["svg_path"] = *c.outputs.svg_path;
    j["outputs"] = outputs;
    if (c.oracle) j["oracle"] = {{"n", c.oracle->n}, {"seeds", c.oracle->seeds}};
    j["validation"] = {{"tolerance", c.validation.tolerance},
                       {"oracle_tolerance", c.validation.oracle_tolerance},
                       {"mutate_analytic_offset", c.validation.mutate_analytic_offset}};
    return j.dump(2) + "\n";
}

}  // namespace endopriv::experiment
