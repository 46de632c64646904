#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "endopriv/equilibrium.hpp"
#include "endopriv/market.hpp"

namespace endopriv {

/// Closed-form equilibria for a linear benefit Q(alpha) = C alpha N with
/// valuations uniform on [0, 1]. The regime is set by C N against K.
enum class LinearRegime { high, special, low };

std::string_view to_string(LinearRegime r);

/// The buyer threshold k_hat carrying the partial branch alpha = A / P.
struct KHat {
    int k = 0;
    double a = 0.0;
};

struct LinearThresholds {
    double cn = 0.0;
    std::optional<int> k_hat;
    std::optional<double> a;
    /// Smallest k > K - CN admitting full participation; only set when k_hat
    /// is absent.
    std::optional<int> k_tilde;
    /// Below this price the low regime has no nontrivial equilibrium. 0 for
    /// the high and special regimes.
    double p_threshold = 0.0;
};

/// CN = K is recognized within a relative tolerance of 1e-12.
LinearRegime classify_linear(const MarketConfig& config, double c);

/// Scans k in (K - CN, K] for B_k < B_{<=k} / (CN - (K - k)) <= B_{k+1}.
/// Throws std::logic_error outside the low regime.
std::optional<KHat> find_k_hat(const MarketConfig& config, double c);

LinearThresholds linear_thresholds(const MarketConfig& config, double c);

/// Every nontrivial equilibrium at config.price(). An empty set is a valid
/// answer (low regime below the price threshold).
EquilibriumSet solve_linear(const MarketConfig& config, double c);

/// Equilibria of the exogenous-cost baseline alpha = min(1, C alpha N / V),
/// including the trivial alpha = 0. Independent of the price.
struct ExogenousOutcome {
    std::vector<double> points;
    std::optional<std::pair<double, double>> interval;

    bool operator==(const ExogenousOutcome&) const = default;
};

ExogenousOutcome exogenous_linear(double c, double n, double v);

}  // namespace endopriv
