"""Thresholds, welfare and subsidy feasibility.

All root finding is plain bisection on brackets whose sign change is
guaranteed by monotonicity, so no derivative information is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .equilibrium import closed_form_profit, regime_qualities
from .model import (
    DomainError,
    EffectivenessSpec,
    Regime,
    ScenarioConfig,
    competition_bound,
    max_valid_gamma,
    require_condition1,
)
from .regime import decide_regime, theorem1_ratio

ROOT_RESIDUAL = 1e-10
BISECT_MAX_ITER = 200


def bisect(fn, lo: float, hi: float, *, max_iter: int = BISECT_MAX_ITER, xtol: float = 0.0):
    """Root of ``fn`` on ``[lo, hi]``; endpoint values must differ in sign.

    Endpoint values may be infinite. Returns ``(root, residual)`` where
    ``residual = |fn(root)|``. Stops once the bracket cannot shrink further.
    """
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo, 0.0
    if fhi == 0:
        return hi, 0.0
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= xtol:
            break
        fm = fn(mid)
        if fm == 0:
            return mid, 0.0
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    root, res = (lo, abs(flo)) if abs(flo) <= abs(fhi) else (hi, abs(fhi))
    return root, res


# --------------------------------------------------------------------- welfare


def consumer_surplus(v1_reg: float, v2_reg: float, gamma: float) -> float:
    """Consumer surplus at the price equilibrium for updated qualities."""
    if not (0.0 <= gamma < 1.0):
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    g2 = gamma * gamma
    num = (4.0 - 3.0 * g2) * (v1_reg**2 + v2_reg**2) - 2.0 * gamma**3 * v1_reg * v2_reg
    return num / (2.0 * (4.0 - g2) ** 2 * (1.0 - g2))


def consumer_surplus_gradient(v1_reg: float, v2_reg: float, gamma: float) -> tuple[float, float]:
    g2 = gamma * gamma
    den = (4.0 - g2) ** 2 * (1.0 - g2)
    return (
        ((4.0 - 3.0 * g2) * v1_reg - gamma**3 * v2_reg) / den,
        ((4.0 - 3.0 * g2) * v2_reg - gamma**3 * v1_reg) / den,
    )


@dataclass(frozen=True)
class WelfareReport:
    cs_ml: float
    cs_fl: float
    sw_ml: float
    sw_fl: float
    all_win: bool


def welfare_report(scenario: ScenarioConfig) -> WelfareReport:
    dec = decide_regime(scenario)
    g = scenario.gamma
    cs_ml = consumer_surplus(*dec.ml.quality, g)
    cs_fl = consumer_surplus(*dec.fl.quality, g)
    sw_ml = cs_ml + dec.ml.profit[0] + dec.ml.profit[1]
    sw_fl = cs_fl + dec.fl.profit[0] + dec.fl.profit[1]
    all_win = (
        dec.chosen is Regime.FL
        and cs_fl > cs_ml
        and sw_fl > sw_ml
        and dec.delta1 > 0
        and dec.delta2 > 0
    )
    return WelfareReport(cs_ml, cs_fl, sw_ml, sw_fl, all_win)


# --------------------------------------------------------------------- subsidy


@dataclass(frozen=True)
class SubsidyReport:
    delta1: float
    delta2: float
    feasible: bool
    min_transfer: float

    @property
    def surplus(self) -> float:
        return self.delta1 + self.delta2


def profit_deltas(scenario: ScenarioConfig, gamma: float | None = None) -> tuple[float, float]:
    """``(Pi1_fl - Pi1_ml, Pi2_fl - Pi2_ml)`` from the closed forms, unchecked."""
    g = scenario.gamma if gamma is None else gamma
    m1, m2 = regime_qualities(scenario, Regime.ML)
    f1, f2 = regime_qualities(scenario, Regime.FL)
    return (
        closed_form_profit(f1, f2, g) - closed_form_profit(m1, m2, g),
        closed_form_profit(f2, f1, g) - closed_form_profit(m2, m1, g),
    )


def subsidy_surplus(scenario: ScenarioConfig, gamma: float | None = None) -> float:
    d1, d2 = profit_deltas(scenario, gamma)
    return d1 + d2


def subsidy_report(scenario: ScenarioConfig) -> SubsidyReport:
    """Can the firm that gains from pooling compensate the one that loses?

    ``min_transfer`` is the lump sum that makes firm 1 whole; in the mirrored
    case (firm 2 holds more information) it compensates firm 2 instead.
    """
    dec = decide_regime(scenario)
    loser_delta = dec.delta(dec.rival)
    return SubsidyReport(
        delta1=dec.delta1,
        delta2=dec.delta2,
        feasible=dec.delta1 + dec.delta2 >= 0,
        min_transfer=max(0.0, -loser_delta),
    )


# ------------------------------------------------------------------ thresholds


def _gamma_star(scenario: ScenarioConfig):
    """``(gamma_star, residual, reason)``; ``gamma_star`` is None when absent."""
    ratio = theorem1_ratio(scenario.effectiveness, scenario.d1, scenario.d2)
    if math.isinf(ratio):
        return None, None, "free rider has no information: ML for every gamma"
    if ratio <= 1.0:
        return None, None, "equal endowments: FL for every valid gamma"
    root, res = bisect(lambda g: competition_bound(g) - ratio, 0.0, 1.0)
    return root, res, None


def solve_gamma_star(scenario: ScenarioConfig) -> float | None:
    """Substitution degree below which the federation forms."""
    return _gamma_star(scenario)[0]


def solve_d2_star(effectiveness: EffectivenessSpec, d1: float, gamma: float) -> float | None:
    """Free-rider endowment above which the federation forms, for a rival holding ``d1``."""
    if d1 <= 0:
        raise DomainError(f"d1 must be positive, got {d1}")
    if not (0.0 <= gamma < 1.0):
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    if gamma == 0.0:
        return None
    effectiveness.verify_shape(2 * d1)
    bound = competition_bound(gamma)
    root, _ = bisect(lambda d2: bound - theorem1_ratio(effectiveness, d1, d2), 0.0, d1)
    return root


def _gamma_hat(scenario: ScenarioConfig, gamma_star: float | None, gamma_max: float):
    """``(gamma_hat, residual, reason)`` on the condition-valid range."""
    if gamma_star is None:
        return None, None, "no gamma_star"
    if not gamma_max > gamma_star:
        return None, None, "condition boundary lies below gamma_star"
    s = lambda g: subsidy_surplus(scenario, g)  # noqa: E731
    if s(gamma_max) >= 0:
        return None, None, f"boundary-limited: surplus still non-negative at gamma_max={gamma_max:.12g}"
    root, res = bisect(s, gamma_star, gamma_max)
    return root, res, None


def solve_gamma_hat(scenario: ScenarioConfig) -> float | None:
    """Substitution degree up to which a side payment can still sustain FL."""
    gs = solve_gamma_star(scenario)
    return _gamma_hat(scenario, gs, max_valid_gamma(scenario))[0]


@dataclass(frozen=True)
class ThresholdReport:
    gamma_star: float | None
    d2_star: float | None
    gamma_hat: float | None
    gamma_max: float
    bracket_residuals: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def boundary_limited(self) -> bool:
        return self.notes.get("gamma_hat", "").startswith("boundary-limited")


def threshold_report(scenario: ScenarioConfig) -> ThresholdReport:
    """All three thresholds for a scenario (endowments oriented so the rival holds more)."""
    require_condition1(scenario)
    gmax = max_valid_gamma(scenario)
    residuals, notes = {}, {}

    gs, res, why = _gamma_star(scenario)
    if why:
        notes["gamma_star"] = why
    else:
        residuals["gamma_star"] = res

    big, small = max(scenario.d1, scenario.d2), min(scenario.d1, scenario.d2)
    d2s = None
    if scenario.gamma == 0.0:
        notes["d2_star"] = "gamma = 0: FL for every positive endowment"
    else:
        bound = competition_bound(scenario.gamma)
        d2s = solve_d2_star(scenario.effectiveness, big, scenario.gamma)
        residuals["d2_star"] = abs(bound - theorem1_ratio(scenario.effectiveness, big, d2s))

    gh, res, why = _gamma_hat(scenario, gs, gmax)
    if why:
        notes["gamma_hat"] = why
    else:
        residuals["gamma_hat"] = res
    return ThresholdReport(gs, d2s, gh, gmax, residuals, notes)
