#include "endopriv/analytic_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "closed_form_detail.hpp"

namespace endopriv {

namespace {

using detail::closed_form_point;
using detail::full_participation_threshold;

constexpr double kSpecialRelTol = 1e-12;
constexpr double kBoundaryRelTol = 1e-9;

void check_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::domain_error("linear benefit C must be positive");
    }
}

bool same_scale(double x, double y) { return std::fabs(x - y) <= kSpecialRelTol * y; }

// CN - (K - k), positive exactly for the candidates allowed to carry an
// equilibrium.
double slack(const MarketConfig& config, double c, int k) {
    return c * config.user_mass() - static_cast<double>(config.buyers() - k);
}

}  // namespace

std::string_view to_string(LinearRegime r) {
    switch (r) {
        case LinearRegime::high: return "high";
        case LinearRegime::special: return "special";
        case LinearRegime::low: return "low";
    }
    return "?";
}

LinearRegime classify_linear(const MarketConfig& config, double c) {
    check_c(c);
    const double cn = c * config.user_mass();
    const double kk = config.buyers();
    if (same_scale(cn, kk)) return LinearRegime::special;
    return cn > kk ? LinearRegime::high : LinearRegime::low;
}

std::optional<KHat> find_k_hat(const MarketConfig& config, double c) {
    if (classify_linear(config, c) != LinearRegime::low) {
        throw std::logic_error("k_hat is only defined when CN < K");
    }
    const int kk = config.buyers();
    const double n = config.user_mass();
    double csum = 0.0;
    for (int k = 1; k <= kk; ++k) {
        csum += config.budget(k);
        const double s = slack(config, c, k);
        if (s <= 0.0) continue;
        const double ratio = csum / s;
        if (config.budget(k) < ratio && config.within_budget(k + 1, ratio)) {
            return KHat{k, ratio / n};
        }
    }
    return std::nullopt;
}

LinearThresholds linear_thresholds(const MarketConfig& config, double c) {
    LinearThresholds t;
    t.cn = c * config.user_mass();
    if (classify_linear(config, c) != LinearRegime::low) return t;

    if (const auto hat = find_k_hat(config, c)) {
        t.k_hat = hat->k;
        t.a = hat->a;
        t.p_threshold = hat->a;
        return t;
    }
    double csum = 0.0;
    for (int k = 1; k <= config.buyers(); ++k) {
        csum += config.budget(k);
        const double s = slack(config, c, k);
        if (s <= 0.0) continue;
        if (config.within_budget(k + 1, csum / s)) {
            t.k_tilde = k;
            t.p_threshold = config.budget(k) / config.user_mass();
            break;
        }
    }
    return t;
}

EquilibriumSet solve_linear(const MarketConfig& config, double c) {
    EquilibriumSet out;
    out.source = Source::analytic;
    const double p = config.price();
    const double n = config.user_mass();

    switch (classify_linear(config, c)) {
        case LinearRegime::high:
            out.points.push_back(closed_form_point(config, 1.0, full_participation_threshold(config)));
            return out;

        case LinearRegime::special: {
            out.near_boundary = c * n != static_cast<double>(config.buyers());
            const double cap = config.budget(1) / (p * n);
            EquilibriumInterval iv;
            iv.lo = 0.0;
            iv.lo_open = true;
            iv.hi = std::min(1.0, cap);
            iv.hi_open = cap >= 1.0;
            out.intervals.push_back(iv);
            out.points.push_back(closed_form_point(config, 1.0, full_participation_threshold(config)));
            return out;
        }

        case LinearRegime::low:
            break;
    }

    const LinearThresholds t = linear_thresholds(config, c);
    const double p_bar = t.p_threshold;
    out.near_boundary = std::fabs(p - p_bar) <= kBoundaryRelTol * p_bar;

    if (t.k_hat) {
        if (p < p_bar) return out;
        const double alpha = *t.a / p;
        if (alpha < 1.0) out.points.push_back(closed_form_point(config, alpha, *t.k_hat));
        out.points.push_back(closed_form_point(config, 1.0, full_participation_threshold(config)));
        return out;
    }

    // Without k_hat the full branch starts strictly above B_{k_tilde} / N: at
    // that exact price buyer k_tilde no longer binds and the threshold drops
    // to a candidate that admits no equilibrium.
    if (t.k_tilde && p > p_bar) {
        out.points.push_back(closed_form_point(config, 1.0, full_participation_threshold(config)));
    }
    return out;
}

ExogenousOutcome exogenous_linear(double c, double n, double v) {
    if (!(c > 0.0) || !(n > 0.0) || !(v > 0.0)) {
        throw std::domain_error("exogenous linear baseline needs positive C, N and V");
    }
    const double cn = c * n;
    ExogenousOutcome out;
    if (same_scale(cn, v)) {
        out.interval = std::make_pair(0.0, 1.0);
    } else if (cn > v) {
        out.points = {0.0, 1.0};
    } else {
        out.points = {0.0};
    }
    return out;
}

}  // namespace endopriv
