#include "endopriv/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace endopriv {

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::partial: return "partial";
        case Regime::full: return "full";
        case Regime::mixed: return "mixed";
    }
    return "?";
}

std::string_view to_string(Source s) {
    switch (s) {
        case Source::analytic: return "analytic";
        case Source::numeric: return "numeric";
        case Source::oracle: return "oracle";
    }
    return "?";
}

void EquilibriumSet::normalize() {
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.alpha < b.alpha; });
    std::sort(intervals.begin(), intervals.end(),
              [](const auto& a, const auto& b) { return a.lo < b.lo; });
}

bool EquilibriumSet::contains(double alpha, double tol) const {
    for (const auto& p : points) {
        if (std::fabs(p.alpha - alpha) <= tol) return true;
    }
    for (const auto& iv : intervals) {
        if (alpha >= iv.lo - tol && alpha <= iv.hi + tol) return true;
    }
    return false;
}

EquilibriumPoint make_point(const MarketConfig& config, double alpha) {
    EquilibriumPoint p;
    p.alpha = alpha;
    p.regime = alpha >= 1.0 ? Regime::full : Regime::partial;
    p.allocation = buyer_demand(config, alpha);
    p.threshold = p.allocation.threshold;
    return p;
}

namespace {

using Segment = std::pair<double, double>;

std::vector<Segment> closed_segments(const EquilibriumSet& s) {
    std::vector<Segment> out;
    out.reserve(s.size());
    for (const auto& p : s.points) out.emplace_back(p.alpha, p.alpha);
    for (const auto& iv : s.intervals) out.emplace_back(iv.lo, iv.hi);
    std::sort(out.begin(), out.end());
    return out;
}

double distance_to(double x, const std::vector<Segment>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : set) {
        const double d = x < lo ? lo - x : (x > hi ? x - hi : 0.0);
        best = std::min(best, d);
    }
    return best;
}

// sup over x in `from` of dist(x, to). On a segment the distance to a union of
// segments is piecewise linear, so the sup sits at an endpoint or at the
// midpoint of a gap in `to`.
double directed(const std::vector<Segment>& from, const std::vector<Segment>& to) {
    double worst = 0.0;
    for (const auto& [lo, hi] : from) {
        worst = std::max(worst, distance_to(lo, to));
        worst = std::max(worst, distance_to(hi, to));
        for (std::size_t i = 0; i + 1 < to.size(); ++i) {
            const double mid = 0.5 * (to[i].second + to[i + 1].first);
            if (mid > lo && mid < hi) worst = std::max(worst, distance_to(mid, to));
        }
    }
    return worst;
}

}  // namespace

double set_distance(const EquilibriumSet& a, const EquilibriumSet& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    const auto sa = closed_segments(a);
    const auto sb = closed_segments(b);
    return std::max(directed(sa, sb), directed(sb, sa));
}

}  // namespace endopriv
