#pragma once

#include <string_view>
#include <vector>

#include "endopriv/market.hpp"

namespace endopriv {

enum class Regime { partial, full, mixed };
enum class Source { analytic, numeric, oracle };

std::string_view to_string(Regime r);
std::string_view to_string(Source s);

struct EquilibriumPoint {
    double alpha = 0.0;
    Regime regime = Regime::partial;
    /// Buyer threshold k* at this equilibrium.
    int threshold = 0;
    BuyerAllocation allocation;
    /// Set by the grid solver when nearby roots were merged into this one.
    bool possible_merge = false;
};

/// A continuum of equilibria at a single price.
struct EquilibriumInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;
};

/// All nontrivial equilibria of one market at one price. alpha = 0 is always
/// an equilibrium and is never stored.
struct EquilibriumSet {
    std::vector<EquilibriumPoint> points;
    std::vector<EquilibriumInterval> intervals;
    Source source = Source::analytic;
    /// Set when the instance sits within tolerance of a regime boundary.
    bool near_boundary = false;

    bool empty() const { return points.empty() && intervals.empty(); }
    std::size_t size() const { return points.size() + intervals.size(); }

    /// Sorts points and intervals by alpha.
    void normalize();

    /// True when alpha is a point or lies in an interval (closure), up to tol.
    bool contains(double alpha, double tol) const;
};

/// Point record with the allocation recomputed from the demand rule.
EquilibriumPoint make_point(const MarketConfig& config, double alpha);

/// Hausdorff distance between the closures of two equilibrium sets. Zero when
/// both are empty, +inf when exactly one is.
double set_distance(const EquilibriumSet& a, const EquilibriumSet& b);

}  // namespace endopriv
