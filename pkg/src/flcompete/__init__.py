"""Equilibrium engine for two competing firms choosing between separate
training (ML) and federated training (FL) of their product models."""

from .analysis import (
    SubsidyReport,
    ThresholdReport,
    WelfareReport,
    consumer_surplus,
    solve_d2_star,
    solve_gamma_hat,
    solve_gamma_star,
    subsidy_report,
    threshold_report,
    welfare_report,
)
from .equilibrium import (
    EquilibriumOutcome,
    NegativeDemandError,
    closed_form_price,
    direct_demand,
    equilibrium_outcome,
)
from .model import (
    ConditionReport,
    ConditionViolation,
    DomainError,
    EffectivenessSpec,
    InformationEndowment,
    MarketPrimitives,
    ModelError,
    Regime,
    ScenarioConfig,
    check_condition1,
    eval_effectiveness,
    max_valid_gamma,
    updated_quality,
)
from .oracle import (
    FixedPointTrace,
    best_response_price,
    grid_equilibrium,
    info_derivative_sign,
    iterate_to_fixed_point,
)
from .regime import (
    ConsistencyError,
    RegimeDecision,
    competition_bound,
    decide_regime,
    lemma3_check,
    theorem1_ratio,
)

__version__ = "0.1.0"
