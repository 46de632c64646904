#pragma once

#include <optional>
#include <vector>

#include "endopriv/equilibrium.hpp"
#include "endopriv/market.hpp"

namespace endopriv {

/// Closed-form equilibria for a constant benefit Q(alpha) = Q with
/// valuations uniform on [0, 1].
enum class ConstantRegime { high, moderate, low };

std::string_view to_string(ConstantRegime r);

/// Price thresholds for the constant-benefit analysis.
///
///   gamma(k)  = ((K - k) B_k + B_{<=k}) / (Q N),   k = 0..K
///   xi(k)     = B_k / N,                           k = 1..K (xi(K+1) = +inf)
///   P*(k)     = B_{<=k} / (N (Q - (K - k))),       only where Q > K - k
///
/// Partial equilibria with buyer threshold k live on (gamma(k), gamma(k+1)].
struct ConstantThresholds {
    std::vector<double> gamma;                 ///< indexed 0..K
    std::vector<double> xi;                    ///< xi(k) at [k-1]
    std::vector<std::optional<double>> p_star; ///< indexed 0..K
    std::optional<int> k_bar;                  ///< absent in the high regime
    /// Price separating partial from full participation: P*(k_bar) when
    /// moderate, gamma(K) when low, 0 when high.
    double p_threshold = 0.0;

    double xi_at(int k) const;  ///< k in 1..K; throws for K+1 (unbounded)
};

ConstantThresholds thresholds(const MarketConfig& config, double q);

/// High: Q >= K. Moderate: K > Q >= B_{<=K}/B_K. Low: Q < B_{<=K}/B_K.
ConstantRegime classify_constant(const MarketConfig& config, double q);

/// The unique buyer threshold admitting both partial and full equilibria.
/// Returns K in the low regime; throws std::logic_error in the high regime.
int find_k_bar(const MarketConfig& config, double q);

/// Every nontrivial equilibrium at config.price().
EquilibriumSet solve_constant(const MarketConfig& config, double q);

/// Participation when privacy costs are exogenous and uniform on [0, V].
/// Does not depend on the price.
double exogenous_constant(double q, double v);

}  // namespace endopriv
