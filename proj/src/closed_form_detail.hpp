#pragma once

#include "endopriv/equilibrium.hpp"
#include "endopriv/market.hpp"

namespace endopriv::detail {

// Allocation at a closed-form equilibrium: buyers up to k* spend their whole
// budget, the rest take all available data.
inline BuyerAllocation threshold_allocation(const MarketConfig& config, double alpha,
                                            int k_star) {
    BuyerAllocation a;
    a.threshold = k_star;
    for (int k = 1; k <= config.buyers(); ++k) {
        a.per_buyer.push_back(k <= k_star ? config.budget(k) / config.price()
                                          : alpha * config.user_mass());
    }
    return a;
}

inline EquilibriumPoint closed_form_point(const MarketConfig& config, double alpha, int k_star) {
    EquilibriumPoint p;
    p.alpha = alpha;
    p.regime = alpha >= 1.0 ? Regime::full : Regime::partial;
    p.threshold = k_star;
    p.allocation = threshold_allocation(config, alpha, k_star);
    return p;
}

// k* at full participation: the number of buyers with xi(k) = B_k / N < P.
inline int full_participation_threshold(const MarketConfig& config) {
    const double pn = config.price() * config.user_mass();
    int k = 0;
    for (double b : config.budgets()) {
        if (b < pn) ++k;
    }
    return k;
}

}  // namespace endopriv::detail
