#include <cmath>

#include "doctest.h"
#include "endopriv/analytic_linear.hpp"
#include "../support/oracles.hpp"

using namespace endopriv;
using doctest::Approx;

namespace {

const ValuationDistribution kUniform = UniformValuation{};

double max_residual(const MarketConfig& m, double c, const EquilibriumSet& s) {
    double worst = 0.0;
    for (const auto& p : s.points) {
        worst = std::max(worst, std::fabs(residual(m, LinearBenefit{c}, kUniform, p.alpha)));
    }
    for (const auto& iv : s.intervals) {
        for (int i = 1; i <= 1000; ++i) {
            const double a = std::min(1.0, iv.lo + (iv.hi - iv.lo) * i / 1000.0);
            worst = std::max(worst, std::fabs(residual(m, LinearBenefit{c}, kUniform, a)));
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE("analytic_linear") {

TEST_CASE("classification") {
    const MarketConfig m(1.0, {1, 2}, 1.0);
    CHECK(classify_linear(m, 3.0) == LinearRegime::high);
    CHECK(classify_linear(m, 2.0) == LinearRegime::special);
    CHECK(classify_linear(m, 2.0 * (1 + 1e-14)) == LinearRegime::special);
    CHECK(classify_linear(m, 1.0) == LinearRegime::low);
    CHECK_THROWS(classify_linear(m, 0.0));
}

TEST_CASE("k_hat examples") {
    {
        const auto h = find_k_hat(MarketConfig(1.0, {1, 2}, 1.0), 1.0);
        REQUIRE(h);
        CHECK(h->k == 2);
        CHECK(h->a == Approx(3.0));
    }
    {
        const auto h = find_k_hat(MarketConfig(1.0, {1, 1}, 1.0), 1.0);
        REQUIRE(h);
        CHECK(h->k == 2);
        CHECK(h->a == Approx(2.0));
    }
    CHECK_THROWS_AS(find_k_hat(MarketConfig(1.0, {1, 2}, 1.0), 2.0), std::logic_error);
}

TEST_CASE("solve examples") {
    {
        const auto s = solve_linear(MarketConfig(1.0, {1, 2}, 6.0), 1.0);
        REQUIRE(s.points.size() == 2);
        CHECK(s.points[0].alpha == Approx(0.5));
        CHECK(s.points[0].threshold == 2);
        CHECK(s.points[0].regime == Regime::partial);
        CHECK(s.points[1].alpha == 1.0);
        CHECK(s.points[1].threshold == 2);
    }
    {
        const auto s = solve_linear(MarketConfig(1.0, {1, 2}, 4.0), 2.0);
        REQUIRE(s.points.size() == 1);
        CHECK(s.points[0].alpha == 1.0);
        REQUIRE(s.intervals.size() == 1);
        CHECK(s.intervals[0].lo == 0.0);
        CHECK(s.intervals[0].lo_open);
        CHECK(s.intervals[0].hi == Approx(0.25));
        CHECK_FALSE(s.intervals[0].hi_open);
        CHECK(residual(MarketConfig(1.0, {1, 2}, 4.0), LinearBenefit{2.0}, kUniform, 0.2) ==
              Approx(0.0));
    }
    CHECK(solve_linear(MarketConfig(1.0, {1, 2}, 2.0), 1.0).empty());
    {
        // At exactly P = A only the full point exists.
        const auto s = solve_linear(MarketConfig(1.0, {1, 2}, 3.0), 1.0);
        REQUIRE(s.points.size() == 1);
        CHECK(s.points[0].alpha == 1.0);
    }
    {
        // Special case with a cap above 1: the interval is (0, 1).
        const auto s = solve_linear(MarketConfig(1.0, {5, 6}, 1.0), 2.0);
        REQUIRE(s.intervals.size() == 1);
        CHECK(s.intervals[0].hi == 1.0);
        CHECK(s.intervals[0].hi_open);
    }
}

TEST_CASE("exogenous baseline") {
    CHECK(exogenous_linear(2.0, 1.0, 1.0) == ExogenousOutcome{{0.0, 1.0}, std::nullopt});
    CHECK(exogenous_linear(1.0, 1.0, 1.0) == ExogenousOutcome{{}, std::make_pair(0.0, 1.0)});
    CHECK(exogenous_linear(0.5, 1.0, 1.0) == ExogenousOutcome{{0.0}, std::nullopt});
    CHECK_THROWS(exogenous_linear(1.0, 0.0, 1.0));
}

TEST_CASE("property: k_hat exists throughout the low regime") {
    // B_{K+1} = +inf makes the upper bracket hold at k = K, and the lower
    // bracket holds at the first k above K - CN and carries forward while
    // the upper one fails. No budget vector escapes.
    oracle::MarketGen gen(41);
    for (int trial = 0; trial < 20000; ++trial) {
        const int k = gen.integer(1, 6);
        const double n = gen.coin() ? 1.0 : gen.uniform(0.5, 100.0);
        const MarketConfig m(n, gen.budgets(k), 1.0);
        const double c = gen.uniform(0.001, 0.999) * k / n;
        if (classify_linear(m, c) != LinearRegime::low) continue;
        const auto h = find_k_hat(m, c);
        REQUIRE(h);
        CHECK(h->k > k - c * n);
        const auto t = linear_thresholds(m, c);
        CHECK_FALSE(t.k_tilde.has_value());
        CHECK(t.p_threshold == h->a);
    }
}

TEST_CASE("property: matches the threshold enumeration oracle") {
    oracle::MarketGen gen(42);
    int compared = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int k = gen.integer(1, 5);
        const double n = gen.coin() ? 1.0 : 100.0;
        const auto b = gen.budgets(k);
        const double c = gen.uniform(0.05, 1.6) * k / n;
        const MarketConfig probe(n, b, 1.0);
        double p = gen.uniform(0.05, 20.0);
        if (classify_linear(probe, c) == LinearRegime::low) {
            p = gen.uniform(0.2, 4.0) * linear_thresholds(probe, c).p_threshold;
        }
        const MarketConfig m = probe.with_price(p);
        const auto s = solve_linear(m, c);
        if (s.near_boundary) continue;
        const auto ref = oracle::linear_equilibria(b, n, p, c);
        REQUIRE(s.points.size() == ref.points.size());
        for (std::size_t i = 0; i < ref.points.size(); ++i) {
            CHECK(s.points[i].alpha == Approx(ref.points[i]).epsilon(1e-12));
        }
        CHECK(max_residual(m, c, s) <= 1e-12);
        for (const auto& pt : s.points) {
            CHECK(buyer_demand(m, pt.alpha).threshold == pt.threshold);
            CHECK(pt.threshold > k - c * n);
            if (pt.alpha == 1.0) {
                double demand = 0.0;
                for (double x : b) demand += std::min(x / p, n);
                CHECK(c * n * n >= demand * (1 - 1e-12));
            }
        }
        ++compared;
    }
    CHECK(compared > 2900);
}

TEST_CASE("property: special continuum") {
    oracle::MarketGen gen(43);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = gen.integer(1, 5);
        const double n = gen.coin() ? 1.0 : 100.0;
        const auto b = gen.budgets(k);
        const double c = k / n;
        const MarketConfig m(n, b, gen.uniform(0.01, 20.0));
        const auto s = solve_linear(m, c);
        REQUIRE(s.intervals.size() == 1);
        const double cap = b.front() / (m.price() * n);
        CHECK(s.intervals[0].hi == Approx(std::min(1.0, cap)));
        CHECK(max_residual(m, c, s) <= 1e-12);
        if (cap < 0.99) {
            CHECK(std::fabs(residual(m, LinearBenefit{c}, kUniform, cap * 1.01)) > 1e-4 * cap);
        }
        CHECK(s.points.back().alpha == 1.0);
    }
}

TEST_CASE("property: partial branch decreases in P towards 1 at A") {
    const MarketConfig base(1.0, {1, 2, 4}, 1.0);
    const double c = 1.5;
    const double a = linear_thresholds(base, c).p_threshold;
    double prev = 1.0;
    for (int i = 1; i <= 200; ++i) {
        const double p = a * (1.0 + i / 50.0);
        const auto s = solve_linear(base.with_price(p), c);
        REQUIRE(s.points.size() == 2);
        CHECK(s.points[0].alpha < prev);
        CHECK(s.points[0].alpha == Approx(a / p));
        prev = s.points[0].alpha;
    }
    const auto near = solve_linear(base.with_price(a * (1 + 1e-7)), c);
    CHECK(near.points.front().alpha > 1 - 1e-6);
}

}  // TEST_SUITE
