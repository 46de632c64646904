#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "endopriv/market.hpp"
#include "endopriv/numeric_solver.hpp"

namespace endopriv::experiment {

inline constexpr int kSchemaVersion = 1;

/// Raised for anything wrong with a configuration document. Maps to exit 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PriceRange {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    enum class Spacing { linear, log } spacing = Spacing::linear;

    bool operator==(const PriceRange&) const = default;
};

struct BenefitSpec {
    enum class Kind { constant, linear, power, sshaped } kind = Kind::constant;
    double q = 0.0;  ///< constant
    double c = 0.0;  ///< linear, power, sshaped
    double s = 0.0;  ///< power
    double a = 0.0;  ///< sshaped
    double b = 0.0;  ///< sshaped

    BenefitFunction build() const;
    bool operator==(const BenefitSpec&) const = default;
};

struct DistributionSpec {
    enum class Kind { uniform, personalized } kind = Kind::uniform;
    double scale = 1.0;  ///< uniform
    double v_m = 0.5;    ///< personalized

    ValuationDistribution build() const;
    bool operator==(const DistributionSpec&) const = default;
};

enum class Method { automatic, analytic, numeric };

struct OutputSpec {
    std::optional<std::string> csv_path;
    std::optional<std::string> svg_path;

    bool operator==(const OutputSpec&) const = default;
};

struct OracleSpec {
    std::size_t n = 0;
    std::vector<std::uint64_t> seeds;

    bool operator==(const OracleSpec&) const = default;
};

struct ValidationSpec {
    double tolerance = 2e-3;
    double oracle_tolerance = 0.01;
    /// Added to every analytic alpha before comparison. Nonzero only in the
    /// mutation fixture that checks the harness can fail.
    double mutate_analytic_offset = 0.0;

    bool operator==(const ValidationSpec&) const = default;
};

struct ExperimentConfig {
    double user_mass = 1.0;
    std::vector<double> budgets;
    BenefitSpec benefit;
    DistributionSpec distribution;
    std::variant<std::vector<double>, PriceRange> prices;
    SolverSettings solver;
    Method method = Method::automatic;
    OutputSpec outputs;
    std::optional<OracleSpec> oracle;
    ValidationSpec validation;

    /// Resolved, strictly increasing price list.
    std::vector<double> price_list() const;
    /// Market at the given price.
    MarketConfig market(double price) const;

    bool operator==(const ExperimentConfig& other) const;
};

/// Parses and fully validates a JSON document. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Emits every field, so parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Checks every invariant; throws ConfigError.
void validate_config(const ExperimentConfig& config);

}  // namespace endopriv::experiment
