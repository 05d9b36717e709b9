"""First-stage choice between separate training (ML) and federation (FL).

Federation forms only if both firms earn strictly more under it. The profit
comparison is cross-checked against the closed-form criterion
``ratio < (2 - g^2)/g``, where ``ratio`` compares the free rider's quality
gain from pooling with its rival's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .equilibrium import both_outcomes, EquilibriumOutcome
from .model import (
    EPS_NUM,
    DomainError,
    EffectivenessSpec,
    Regime,
    ScenarioConfig,
    competition_bound,
    eval_effectiveness,
    require_condition1,
)

__all__ = [
    "ConsistencyError",
    "RegimeDecision",
    "competition_bound",
    "decide_regime",
    "lemma3_check",
    "theorem1_ratio",
]


class ConsistencyError(RuntimeError):
    """Profit comparison and the closed-form criterion disagree."""


def theorem1_ratio(effectiveness: EffectivenessSpec, d1: float, d2: float) -> float:
    """Free rider's pooling gain over the rival's pooling gain.

    The firm with more information plays the rival role whichever index it
    has. Equal endowments give exactly 1; a zero endowment gives ``inf``.
    """
    if d1 < 0 or d2 < 0:
        raise DomainError(f"endowments must be non-negative, got ({d1}, {d2})")
    big, small = max(d1, d2), min(d1, d2)
    if big == 0:
        raise DomainError("ratio undefined when both endowments are zero")
    if big == small:
        return 1.0
    if small == 0:
        return math.inf
    f = lambda r: eval_effectiveness(effectiveness, r)  # noqa: E731
    pooled = f(big + small)
    return (pooled - f(small)) / (pooled - f(big))


@dataclass(frozen=True)
class RegimeDecision:
    chosen: Regime
    ratio: float
    bound: float
    delta1: float
    delta2: float
    free_rider: int
    criterion_verdict: Regime
    mirrored: bool
    ml: EquilibriumOutcome
    fl: EquilibriumOutcome

    @property
    def rival(self) -> int:
        return 3 - self.free_rider

    def delta(self, firm: int) -> float:
        return self.delta1 if firm == 1 else self.delta2


def _near_tie(dec_delta: float, scale: float, ratio: float, bound: float, tol: float) -> bool:
    if abs(dec_delta) <= tol * max(1.0, scale):
        return True
    if math.isfinite(ratio) and math.isfinite(bound):
        return abs(bound - ratio) <= tol * max(1.0, bound)
    return False


def decide_regime(scenario: ScenarioConfig, *, tie_tolerance: float = EPS_NUM) -> RegimeDecision:
    """Pick ML or FL by comparing both firms' equilibrium profits.

    The verdict must agree with ``ratio < bound``; a disagreement that is not
    within ``tie_tolerance`` of a tie raises :class:`ConsistencyError`.
    Exact ties in profit resolve to ML.
    """
    require_condition1(scenario)
    ml, fl = both_outcomes(scenario, checked=False)
    delta1 = fl.profit[0] - ml.profit[0]
    delta2 = fl.profit[1] - ml.profit[1]
    chosen = Regime.FL if (delta1 > 0 and delta2 > 0) else Regime.ML

    endow = scenario.endowment
    ratio = theorem1_ratio(scenario.effectiveness, endow.d1, endow.d2)
    bound = competition_bound(scenario.gamma)
    if math.isinf(ratio):
        verdict = Regime.ML
    else:
        # equal endowments (ratio == 1) still favour FL through profits
        verdict = Regime.FL if ratio < bound else Regime.ML

    rival = 3 - endow.free_rider
    rival_delta = delta1 if rival == 1 else delta2
    if verdict is not chosen:
        scale = max(ml.profit[rival - 1], fl.profit[rival - 1])
        if not _near_tie(rival_delta, scale, ratio, bound, tie_tolerance):
            raise ConsistencyError(
                f"profit verdict {chosen.value} but ratio {ratio:.12g} vs bound {bound:.12g} "
                f"gives {verdict.value} (delta1={delta1:.6g}, delta2={delta2:.6g})"
            )

    return RegimeDecision(
        chosen=chosen,
        ratio=ratio,
        bound=bound,
        delta1=delta1,
        delta2=delta2,
        free_rider=endow.free_rider,
        criterion_verdict=verdict,
        mirrored=endow.mirrored,
        ml=ml,
        fl=fl,
    )


def lemma3_check(scenario: ScenarioConfig) -> tuple[bool, bool]:
    """``(free_rider_gains, rival_gains)`` from joining the federation."""
    dec = decide_regime(scenario)
    return dec.delta(dec.free_rider) > 0, dec.delta(dec.rival) > 0
