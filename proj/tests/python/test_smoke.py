import math

import pytest

import endopriv as ep


def test_two_equal_buyers_at_unit_price():
    s = ep.solve_constant(ep.MarketConfig(1.0, [1.0, 1.0], 1.0), 1.0)
    assert s.alphas == pytest.approx([0.5], abs=1e-12)
    assert s.points[0].regime == ep.Regime.partial


def test_moderate_benefit_partial_branch():
    m = ep.MarketConfig(1.0, [1.0, 2.0, 3.0], 1.6)
    assert ep.classify_constant(m, 2.5) == "moderate"
    assert ep.constant_price_threshold(m, 2.5) == pytest.approx(2.0)
    assert ep.solve_constant(m, 2.5).alphas == pytest.approx([0.9375], abs=1e-9)


def test_low_benefit_continuum_and_numeric_agreement():
    m = ep.MarketConfig(1.0, [1.0, 1.0], 2.0)
    s = ep.solve_constant(m, 1.0)
    assert len(s.intervals) == 1
    assert (s.intervals[0].lo, s.intervals[0].hi) == pytest.approx((0.5, 1.0))
    g = ep.grid_equilibria(m, ep.ConstantBenefit(1.0))
    assert ep.set_distance(s, g) <= 1.0 / 4096


def test_linear_low_regime_two_equilibria():
    m = ep.MarketConfig(1.0, [1.0, 2.0], 6.0)
    assert ep.classify_linear(m, 1.0) == "low"
    s = ep.solve_linear(m, 1.0)
    assert s.alphas == pytest.approx([0.5, 1.0])
    closed = ep.solve_closed_form(m, ep.LinearBenefit(1.0))
    assert ep.set_distance(s, closed) == 0.0


def test_no_closed_form_for_sshaped():
    m = ep.MarketConfig(1.0, [1.0, 2.0], 1.0)
    assert ep.solve_closed_form(m, ep.SShapedBenefit(2.0, 5.0, 5.0)) is None


def test_oracle_is_deterministic_and_close():
    m = ep.MarketConfig(1.0, [1.0, 1.0], 1.0)
    a = ep.empirical_oracle(m, ep.ConstantBenefit(1.0), ep.UniformValuation(), 100000, 7)
    b = ep.empirical_oracle(m, ep.ConstantBenefit(1.0), ep.UniformValuation(), 100000, 7)
    assert a.alphas == b.alphas
    assert a.source == ep.Source.oracle
    assert ep.set_distance(a, ep.solve_constant(m, 1.0)) < 0.01


def test_sweep_with_cross_check():
    m = ep.MarketConfig(1.0, [1.0, 2.0, 3.0], 1.0)
    prices = [0.5 + 0.25 * i for i in range(12)]
    rows = ep.sweep(m, ep.ConstantBenefit(2.5), ep.UniformValuation(), prices,
                    ep.SolverSettings(tolerance=2e-3), True)
    assert [r.price for r in rows] == prices
    for r in rows:
        assert r.analytic is not None
        assert ep.set_distance(r.analytic, r.equilibria) <= 2e-3


def test_personalized_full_participation():
    m = ep.MarketConfig(1.0, [1.0, 2.0, 3.0], 2.0)
    s = ep.grid_equilibria(m, ep.ConstantBenefit(3.5), ep.PersonalizedValuation(0.5))
    assert s.alphas == [1.0]


def test_incomplete_beta_symmetric_midpoint():
    assert ep.regularized_incomplete_beta(0.5, 5.0, 5.0) == pytest.approx(0.5, abs=1e-12)
    assert ep.regularized_incomplete_beta(0.3, 1.0, 1.0) == pytest.approx(0.3, abs=1e-12)


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        ep.MarketConfig(1.0, [2.0, 1.0], 1.0)
    with pytest.raises(ValueError):
        ep.SolverSettings(tolerance=1e-12)
    assert math.isinf(ep.set_distance(ep.solve_linear(ep.MarketConfig(1.0, [1.0, 2.0], 1.0), 0.1),
                                      ep.solve_constant(ep.MarketConfig(1.0, [1.0], 1.0), 1.0)))
