#include "endopriv/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "endopriv/special.hpp"

namespace endopriv {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::domain_error("participation rate must lie in (0, 1], got " +
                                std::to_string(alpha));
    }
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

// ---------------------------------------------------------------------------
// MarketConfig

MarketConfig::MarketConfig(double user_mass, std::vector<double> budgets, double price)
    : user_mass_(user_mass), budgets_(std::move(budgets)), price_(price) {
    if (!positive_finite(user_mass_)) {
        throw std::invalid_argument("user mass must be positive and finite");
    }
    if (!positive_finite(price_)) {
        throw std::invalid_argument("price must be positive and finite");
    }
    if (budgets_.empty()) {
        throw std::invalid_argument("at least one buyer budget is required");
    }
    for (double b : budgets_) {
        if (!positive_finite(b)) {
            throw std::invalid_argument("buyer budgets must be positive and finite");
        }
    }
    if (!std::is_sorted(budgets_.begin(), budgets_.end())) {
        throw std::invalid_argument("buyer budgets must be sorted nondecreasing");
    }
}

double MarketConfig::budget(int k) const {
    if (k < 0 || k > buyers()) {
        throw std::domain_error("budget index out of range: " + std::to_string(k));
    }
    return k == 0 ? 0.0 : budgets_[static_cast<std::size_t>(k - 1)];
}

bool MarketConfig::within_budget(int k, double x) const {
    if (k == buyers() + 1) return true;
    return x <= budget(k);
}

MarketConfig MarketConfig::with_price(double price) const {
    return MarketConfig(user_mass_, budgets_, price);
}

// ---------------------------------------------------------------------------
// BenefitFunction

BenefitFunction::BenefitFunction(ConstantBenefit b) : kind_(b) {
    if (!(b.q >= 0.0) || !std::isfinite(b.q)) {
        throw std::invalid_argument("constant benefit must be nonnegative");
    }
}

BenefitFunction::BenefitFunction(LinearBenefit b) : kind_(b) {
    if (!positive_finite(b.c)) throw std::invalid_argument("linear benefit C must be positive");
}

BenefitFunction::BenefitFunction(PowerBenefit b) : kind_(b) {
    if (!positive_finite(b.c)) throw std::invalid_argument("power benefit C must be positive");
    if (!(b.s >= 0.0 && b.s <= 1.0)) {
        throw std::invalid_argument("power benefit exponent must lie in [0, 1]");
    }
}

BenefitFunction::BenefitFunction(SShapedBenefit b) : kind_(b) {
    if (!positive_finite(b.c) || !positive_finite(b.a) || !positive_finite(b.b)) {
        throw std::invalid_argument("s-shaped benefit parameters must be positive");
    }
}

double BenefitFunction::eval(double alpha, double user_mass) const {
    struct Visitor {
        double alpha;
        double n;
        double operator()(const ConstantBenefit& b) const { return b.q; }
        double operator()(const LinearBenefit& b) const { return b.c * alpha * n; }
        double operator()(const PowerBenefit& b) const {
            // s = 0 and s = 1 are returned in the same arithmetic as the
            // constant and linear families.
            if (b.s == 0.0) return b.c;
            if (b.s == 1.0) return b.c * alpha * n;
            return b.c * std::pow(alpha * n, b.s);
        }
        double operator()(const SShapedBenefit& b) const {
            return b.c * regularized_incomplete_beta(alpha, b.a, b.b);
        }
    };
    return std::visit(Visitor{alpha, user_mass}, kind_);
}

// ---------------------------------------------------------------------------
// ValuationDistribution

ValuationDistribution::ValuationDistribution(UniformValuation d) : kind_(d) {
    if (!positive_finite(d.scale)) throw std::invalid_argument("uniform scale must be positive");
}

ValuationDistribution::ValuationDistribution(PersonalizedValuation d) : kind_(d) {
    if (!(d.v_m > 0.0 && d.v_m < 1.0)) {
        throw std::invalid_argument("personalized v_M must lie in (0, 1)");
    }
}

ValuationDistribution::ValuationDistribution(EmpiricalValuation d) : kind_(std::move(d)) {
    const auto& s = std::get<EmpiricalValuation>(kind_).sorted;
    if (!s || s->empty()) throw std::invalid_argument("empirical distribution needs samples");
    if (!std::is_sorted(s->begin(), s->end())) {
        throw std::invalid_argument("empirical samples must be sorted");
    }
}

ValuationDistribution ValuationDistribution::empirical(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    return ValuationDistribution(
        EmpiricalValuation{std::make_shared<const std::vector<double>>(std::move(samples))});
}

double ValuationDistribution::cdf(double x) const {
    struct Visitor {
        double x;
        double operator()(const UniformValuation& d) const {
            if (x < 0.0) return 0.0;
            return std::min(1.0, x / d.scale);
        }
        double operator()(const PersonalizedValuation& d) const {
            using P = PersonalizedValuation;
            if (x < 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            if (x <= d.v_m) return P::zero_mass + P::medium_mass * (x / d.v_m);
            return P::cdf_at_vm + (1.0 - P::cdf_at_vm) * ((x - d.v_m) / (1.0 - d.v_m));
        }
        double operator()(const EmpiricalValuation& d) const {
            const auto& s = *d.sorted;
            const auto it = std::upper_bound(s.begin(), s.end(), x);
            return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
        }
    };
    return std::visit(Visitor{x}, kind_);
}

double ValuationDistribution::quantile(double u) const {
    if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("quantile level must lie in [0, 1)");
    struct Visitor {
        double u;
        double operator()(const UniformValuation& d) const { return u * d.scale; }
        double operator()(const PersonalizedValuation& d) const {
            using P = PersonalizedValuation;
            if (u < P::zero_mass) return 0.0;
            if (u < P::cdf_at_vm) return d.v_m * (u - P::zero_mass) / P::medium_mass;
            return d.v_m + (1.0 - d.v_m) * (u - P::cdf_at_vm) / (1.0 - P::cdf_at_vm);
        }
        double operator()(const EmpiricalValuation&) const {
            throw std::logic_error("cannot sample from an empirical distribution");
        }
    };
    return std::visit(Visitor{u}, kind_);
}

double ValuationDistribution::upper_support() const {
    struct Visitor {
        double operator()(const UniformValuation& d) const { return d.scale; }
        double operator()(const PersonalizedValuation&) const { return 1.0; }
        double operator()(const EmpiricalValuation& d) const { return d.sorted->back(); }
    };
    return std::visit(Visitor{}, kind_);
}

// ---------------------------------------------------------------------------
// Primitive operations

double BuyerAllocation::total() const {
    return std::accumulate(per_buyer.begin(), per_buyer.end(), 0.0);
}

BuyerAllocation buyer_demand(const MarketConfig& config, double alpha) {
    check_alpha(alpha);
    const double available = alpha * config.user_mass();
    BuyerAllocation out;
    out.per_buyer.reserve(config.budgets().size());
    int k = 0;
    for (double b : config.budgets()) {
        ++k;
        const double wanted = b / config.price();
        if (wanted < available) {
            out.per_buyer.push_back(wanted);
            out.threshold = k;
        } else {
            out.per_buyer.push_back(available);
        }
    }
    return out;
}

double cumulative_budget(const MarketConfig& config, int m) {
    if (m < 0 || m > config.buyers()) {
        throw std::domain_error("cumulative budget index out of range: " + std::to_string(m));
    }
    const auto b = config.budgets();
    return std::accumulate(b.begin(), b.begin() + m, 0.0);
}

double expected_purchases(const MarketConfig& config, double alpha) {
    return buyer_demand(config, alpha).total() / (alpha * config.user_mass());
}

double expected_cost(double v, const MarketConfig& config, double alpha) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("valuation must lie in [0, 1]");
    return v * expected_purchases(config, alpha);
}

double user_utility(double v, const MarketConfig& config, const BenefitFunction& benefit,
                    double alpha) {
    return benefit.eval(alpha, config.user_mass()) - expected_cost(v, config, alpha);
}

double threshold_valuation(const MarketConfig& config, const BenefitFunction& benefit,
                           double alpha) {
    const double sold = buyer_demand(config, alpha).total();
    return alpha * config.user_mass() * benefit.eval(alpha, config.user_mass()) / sold;
}

double residual(const MarketConfig& config, const BenefitFunction& benefit,
                const ValuationDistribution& dist, double alpha) {
    return alpha - dist.cdf(threshold_valuation(config, benefit, alpha));
}

}  // namespace endopriv
