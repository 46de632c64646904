#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "endopriv/equilibrium.hpp"
#include "endopriv/market.hpp"

namespace endopriv {

struct SolverSettings {
    int grid_points = 4096;
    double tolerance = 2e-3;
    double refine_tolerance = 1e-10;
    /// Consecutive flat grid points needed before a run is reported as an
    /// interval.
    int interval_min_run = 3;

    /// Throws std::invalid_argument unless tolerance > refine_tolerance > 0
    /// and grid_points >= 16.
    void validate() const;

    bool operator==(const SolverSettings&) const = default;
};

struct SweepRow {
    double price = 0.0;
    EquilibriumSet equilibria;
    /// Closed-form set for the same price when the instance has one and the
    /// cross-check was requested.
    std::optional<EquilibriumSet> analytic;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

using ResidualFn = std::function<double(double)>;

/// Zero set of an arbitrary residual on (0, 1], as alphas only. Points carry
/// no allocation; intervals are closed.
///
/// A grid point is a hit when |r| <= tolerance and flat when
/// |r| <= refine_tolerance. Runs of at least interval_min_run flat points
/// that stay within tolerance under 4x refinement become intervals. Sign
/// changes are bisected; a bracket that collapses onto a jump larger than
/// tolerance is rejected. Hit runs without a sign change contribute their
/// best point. Roots closer than one grid step are merged and flagged.
EquilibriumSet scan_residual(const ResidualFn& f, const SolverSettings& settings);

EquilibriumSet grid_equilibria(const MarketConfig& config, const BenefitFunction& benefit,
                               const ValuationDistribution& dist,
                               const SolverSettings& settings = {});

/// Bisection on the residual. Requires a sign change on [lo, hi] with
/// 0 < lo < hi <= 1, else throws std::invalid_argument. The returned alpha is
/// never worse than the best endpoint evaluated.
double refine_root(const MarketConfig& config, const BenefitFunction& benefit,
                   const ValuationDistribution& dist, double lo, double hi,
                   double refine_tolerance = 1e-10);

double refine_root(const ResidualFn& f, double lo, double hi, double refine_tolerance);

/// Draws n valuations from dist with the given seed and solves against their
/// empirical CDF. Deterministic for a fixed seed.
EquilibriumSet empirical_oracle(const MarketConfig& config, const BenefitFunction& benefit,
                                const ValuationDistribution& dist, std::size_t n,
                                std::uint64_t seed, const SolverSettings& settings = {});

/// The n valuations empirical_oracle would draw, in draw order.
std::vector<double> draw_valuations(const ValuationDistribution& dist, std::size_t n,
                                    std::uint64_t seed);

/// Solves every price independently on worker threads. Prices must be
/// strictly increasing (std::invalid_argument otherwise).
SweepResult sweep(const MarketConfig& config_template, const BenefitFunction& benefit,
                  const ValuationDistribution& dist, const std::vector<double>& prices,
                  const SolverSettings& settings = {}, bool analytic_cross_check = false);

}  // namespace endopriv
