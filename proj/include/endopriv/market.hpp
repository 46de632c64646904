#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace endopriv {

/// Platform-side description of the market: a non-atomic user population of
/// mass N, K budget-constrained buyers with nondecreasing budgets, and the
/// posted price per unit mass of data.
///
/// Buyers are indexed 1..K. The virtual budgets B_0 = 0 and B_{K+1} = +inf are
/// reachable through the accessors below but never stored.
class MarketConfig {
public:
    MarketConfig(double user_mass, std::vector<double> budgets, double price);

    double user_mass() const { return user_mass_; }
    double price() const { return price_; }
    int buyers() const { return static_cast<int>(budgets_.size()); }
    std::span<const double> budgets() const { return budgets_; }

    /// B_k for k in [0, K]. B_0 is 0.
    double budget(int k) const;

    /// True when x <= B_k, for k in [0, K+1]. For k = K+1 this is always true.
    bool within_budget(int k, double x) const;

    MarketConfig with_price(double price) const;

private:
    double user_mass_;
    std::vector<double> budgets_;
    double price_;
};

/// Q(alpha) = Q, independent of participation.
struct ConstantBenefit {
    double q;
};

/// Q(alpha) = C * alpha * N.
struct LinearBenefit {
    double c;
};

/// Q(alpha) = C * (alpha * N)^s, s in [0, 1].
struct PowerBenefit {
    double c;
    double s;
};

/// Q(alpha) = C * I_alpha(a, b).
struct SShapedBenefit {
    double c;
    double a;
    double b;
};

class BenefitFunction {
public:
    using Variant = std::variant<ConstantBenefit, LinearBenefit, PowerBenefit, SShapedBenefit>;

    BenefitFunction(ConstantBenefit b);
    BenefitFunction(LinearBenefit b);
    BenefitFunction(PowerBenefit b);
    BenefitFunction(SShapedBenefit b);

    /// Benefit of a participating user at participation rate alpha, for a
    /// population of the given mass.
    double eval(double alpha, double user_mass) const;

    const Variant& kind() const { return kind_; }

private:
    Variant kind_;
};

/// v ~ U[0, V].
struct UniformValuation {
    double scale = 1.0;
};

/// Survey-derived mixture: an atom at v = 0, a medium band uniform on
/// (0, v_M] and a high band uniform on (v_M, 1].
struct PersonalizedValuation {
    double v_m;

    static constexpr double zero_mass = 0.107;
    static constexpr double medium_mass = 0.537;
    /// cdf(v_M); the high band carries the remaining mass up to 1.
    static constexpr double cdf_at_vm = zero_mass + medium_mass;
};

/// Empirical distribution of a finite sample. Used by the finite-agent oracle.
struct EmpiricalValuation {
    std::shared_ptr<const std::vector<double>> sorted;
};

class ValuationDistribution {
public:
    using Variant = std::variant<UniformValuation, PersonalizedValuation, EmpiricalValuation>;

    ValuationDistribution(UniformValuation d);
    ValuationDistribution(PersonalizedValuation d);
    ValuationDistribution(EmpiricalValuation d);

    /// Builds an empirical distribution; takes ownership and sorts.
    static ValuationDistribution empirical(std::vector<double> samples);

    /// Right-continuous CDF.
    double cdf(double x) const;

    /// Inverse CDF for u in [0, 1). Not available for empirical distributions.
    double quantile(double u) const;

    double upper_support() const;

    const Variant& kind() const { return kind_; }

private:
    Variant kind_;
};

struct BuyerAllocation {
    /// N_k for k = 1..K, stored at [k-1].
    std::vector<double> per_buyer;
    /// Largest k whose budget binds (N_k < alpha N); 0 when none does.
    int threshold = 0;

    double total() const;
};

BuyerAllocation buyer_demand(const MarketConfig& config, double alpha);

/// B_{<=m}; 0 for m = 0.
double cumulative_budget(const MarketConfig& config, int m);

/// Expected number of buyers that purchase a given participant's data.
double expected_purchases(const MarketConfig& config, double alpha);

double expected_cost(double v, const MarketConfig& config, double alpha);

/// Utility of participating for user v. Abstaining yields 0.
double user_utility(double v, const MarketConfig& config, const BenefitFunction& benefit,
                    double alpha);

/// Largest valuation that still (weakly) prefers to participate.
double threshold_valuation(const MarketConfig& config, const BenefitFunction& benefit,
                           double alpha);

/// alpha - F(threshold_valuation(alpha)). Zero exactly at participation
/// equilibria.
double residual(const MarketConfig& config, const BenefitFunction& benefit,
                const ValuationDistribution& dist, double alpha);

}  // namespace endopriv
