#include "endopriv/closed_form.hpp"

#include <variant>

#include "endopriv/analytic_constant.hpp"
#include "endopriv/analytic_linear.hpp"

namespace endopriv {

namespace {

enum class Family { none, constant, linear };

struct Reduced {
    Family family = Family::none;
    double coefficient = 0.0;
};

Reduced reduce(const BenefitFunction& benefit) {
    return std::visit(
        [](const auto& b) -> Reduced {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConstantBenefit>) {
                return {Family::constant, b.q};
            } else if constexpr (std::is_same_v<T, LinearBenefit>) {
                return {Family::linear, b.c};
            } else if constexpr (std::is_same_v<T, PowerBenefit>) {
                if (b.s == 0.0) return {Family::constant, b.c};
                if (b.s == 1.0) return {Family::linear, b.c};
                return {};
            } else {
                return {};
            }
        },
        benefit.kind());
}

const UniformValuation* as_uniform(const ValuationDistribution& dist) {
    return std::get_if<UniformValuation>(&dist.kind());
}

}  // namespace

bool has_closed_form(const BenefitFunction& benefit, const ValuationDistribution& dist) {
    return as_uniform(dist) != nullptr && reduce(benefit).family != Family::none;
}

std::optional<EquilibriumSet> solve_closed_form(const MarketConfig& config,
                                                const BenefitFunction& benefit,
                                                const ValuationDistribution& dist) {
    const UniformValuation* u = as_uniform(dist);
    const Reduced r = reduce(benefit);
    if (u == nullptr || r.family == Family::none) return std::nullopt;

    const double scaled = r.coefficient / u->scale;
    if (!(scaled > 0.0)) {
        // Nobody with a positive valuation participates for free.
        EquilibriumSet none;
        none.source = Source::analytic;
        return none;
    }
    EquilibriumSet out = r.family == Family::constant ? solve_constant(config, scaled)
                                                      : solve_linear(config, scaled);
    out.normalize();
    return out;
}

}  // namespace endopriv
