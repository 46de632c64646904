#include "endopriv/analytic_constant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "closed_form_detail.hpp"

namespace endopriv {

namespace {

using detail::closed_form_point;
using detail::full_participation_threshold;

// Relative tolerance for recognizing the measure-zero continuum price.
constexpr double kBoundaryRelTol = 1e-9;

void check_q(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw std::domain_error("constant benefit must be positive for the closed form");
    }
}

// Partial equilibrium on the gamma segment containing the price.
EquilibriumPoint partial_on_segment(const MarketConfig& config, double q,
                                    const std::vector<double>& gamma) {
    const double p = config.price();
    const int kk = config.buyers();
    // Smallest j >= 1 with P <= gamma(j); the segment is (gamma(j-1), gamma(j)].
    const auto it = std::lower_bound(gamma.begin() + 1, gamma.end(), p);
    if (it == gamma.end()) throw std::logic_error("price lies above gamma(K)");
    const int k = static_cast<int>(it - gamma.begin()) - 1;
    const double alpha =
        (q - cumulative_budget(config, k) / (p * config.user_mass())) / static_cast<double>(kk - k);
    return closed_form_point(config, alpha, k);
}

}  // namespace

std::string_view to_string(ConstantRegime r) {
    switch (r) {
        case ConstantRegime::high: return "high";
        case ConstantRegime::moderate: return "moderate";
        case ConstantRegime::low: return "low";
    }
    return "?";
}

double ConstantThresholds::xi_at(int k) const {
    if (k < 1 || k > static_cast<int>(xi.size())) {
        throw std::domain_error("xi index out of range");
    }
    return xi[static_cast<std::size_t>(k - 1)];
}

ConstantRegime classify_constant(const MarketConfig& config, double q) {
    check_q(q);
    const int kk = config.buyers();
    if (q >= kk) return ConstantRegime::high;
    // Q >= B_{<=K} / B_K, compared without division.
    if (q * config.budget(kk) >= cumulative_budget(config, kk)) return ConstantRegime::moderate;
    return ConstantRegime::low;
}

int find_k_bar(const MarketConfig& config, double q) {
    const ConstantRegime regime = classify_constant(config, q);
    if (regime == ConstantRegime::high) {
        throw std::logic_error("k_bar is undefined when Q >= K");
    }
    const int kk = config.buyers();
    if (regime == ConstantRegime::low) return kk;
    double csum = 0.0;
    for (int k = 1; k <= kk; ++k) {
        csum += config.budget(k);
        const double slack = q - static_cast<double>(kk - k);
        const bool admits_partial = csum > slack * config.budget(k);
        const bool admits_full = k == kk || csum <= slack * config.budget(k + 1);
        if (admits_partial && admits_full) return k;
    }
    throw std::logic_error("no buyer threshold admits both equilibrium types");
}

ConstantThresholds thresholds(const MarketConfig& config, double q) {
    check_q(q);
    const int kk = config.buyers();
    const double n = config.user_mass();
    ConstantThresholds t;
    t.gamma.resize(static_cast<std::size_t>(kk) + 1);
    t.p_star.resize(static_cast<std::size_t>(kk) + 1);
    for (int k = 0; k <= kk; ++k) {
        const double csum = cumulative_budget(config, k);
        t.gamma[static_cast<std::size_t>(k)] =
            (static_cast<double>(kk - k) * config.budget(k) + csum) / (q * n);
        const double slack = q - static_cast<double>(kk - k);
        if (slack > 0.0) t.p_star[static_cast<std::size_t>(k)] = csum / (n * slack);
    }
    for (int k = 1; k <= kk; ++k) t.xi.push_back(config.budget(k) / n);

    switch (classify_constant(config, q)) {
        case ConstantRegime::high:
            t.p_threshold = 0.0;
            break;
        case ConstantRegime::moderate:
            t.k_bar = find_k_bar(config, q);
            t.p_threshold = *t.p_star[static_cast<std::size_t>(*t.k_bar)];
            break;
        case ConstantRegime::low:
            t.k_bar = kk;
            t.p_threshold = t.gamma.back();
            break;
    }
    return t;
}

EquilibriumSet solve_constant(const MarketConfig& config, double q) {
    EquilibriumSet out;
    out.source = Source::analytic;
    const double p = config.price();
    const ConstantRegime regime = classify_constant(config, q);

    if (regime == ConstantRegime::high) {
        out.points.push_back(closed_form_point(config, 1.0, full_participation_threshold(config)));
        return out;
    }

    const ConstantThresholds t = thresholds(config, q);
    const double p_bar = t.p_threshold;
    out.near_boundary = std::fabs(p - p_bar) <= kBoundaryRelTol * p_bar;

    if (regime == ConstantRegime::moderate) {
        if (p < p_bar) {
            out.points.push_back(partial_on_segment(config, q, t.gamma));
        } else {
            out.points.push_back(
                closed_form_point(config, 1.0, full_participation_threshold(config)));
        }
        return out;
    }

    // Low regime: p_bar = gamma(K) carries a continuum.
    const int kk = config.buyers();
    if (out.near_boundary) {
        EquilibriumInterval iv;
        iv.lo = q * config.budget(kk) / cumulative_budget(config, kk);
        iv.hi = 1.0;
        out.intervals.push_back(iv);
    } else if (p < p_bar) {
        out.points.push_back(partial_on_segment(config, q, t.gamma));
    } else {
        out.points.push_back(closed_form_point(config, 1.0, kk));
    }
    return out;
}

double exogenous_constant(double q, double v) {
    if (!(v > 0.0)) throw std::domain_error("exogenous cost scale must be positive");
    if (!(q >= 0.0)) throw std::domain_error("benefit must be nonnegative");
    return std::min(1.0, q / v);
}

}  // namespace endopriv
