"""Participation equilibria of data markets with endogenous privacy costs."""

from ._core import (
    BenefitFunction,
    ConstantBenefit,
    EquilibriumInterval,
    EquilibriumPoint,
    EquilibriumSet,
    LinearBenefit,
    MarketConfig,
    PersonalizedValuation,
    PowerBenefit,
    Regime,
    SShapedBenefit,
    SolverSettings,
    Source,
    SweepRow,
    UniformValuation,
    ValuationDistribution,
    classify_constant,
    classify_linear,
    constant_price_threshold,
    empirical_oracle,
    exogenous_constant,
    expected_purchases,
    grid_equilibria,
    linear_price_threshold,
    regularized_incomplete_beta,
    residual,
    set_distance,
    solve_closed_form,
    solve_constant,
    solve_linear,
    sweep,
    threshold_valuation,
)

__version__ = "0.1.0"
