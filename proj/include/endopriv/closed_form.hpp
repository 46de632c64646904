#pragma once

#include <optional>

#include "endopriv/equilibrium.hpp"
#include "endopriv/market.hpp"

namespace endopriv {

/// Analytic equilibria when the instance is a recognized closed-form case:
/// a constant or linear benefit (Power with s = 0 or s = 1 included) under a
/// uniform valuation distribution. Returns nullopt otherwise.
///
/// Uniform on [0, V] reduces to the unit case by dividing the benefit by V.
std::optional<EquilibriumSet> solve_closed_form(const MarketConfig& config,
                                                const BenefitFunction& benefit,
                                                const ValuationDistribution& dist);

bool has_closed_form(const BenefitFunction& benefit, const ValuationDistribution& dist);

}  // namespace endopriv
