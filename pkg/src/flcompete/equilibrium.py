"""Second-stage Bertrand equilibrium with differentiated products.

Both firms contribute their whole endowment in equilibrium, so qualities are
evaluated at the corner ``R_i = D_i`` and prices follow from the linear
first-order conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    EPS_NUM,
    DomainError,
    ModelError,
    Regime,
    ScenarioConfig,
    require_condition1,
)


class NegativeDemandError(ModelError):
    """A firm would be priced out of the market."""


def _check_gamma(gamma: float) -> None:
    if not (0.0 <= gamma < 1.0):
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")


def direct_demand(v_own: float, v_rival: float, p_own: float, p_rival: float, gamma: float) -> float:
    """Quantity demanded from the own firm given both prices.

    Inverts ``p_i = v_i - q_i - gamma * q_j``. The result may be negative;
    callers decide whether that means exit.
    """
    _check_gamma(gamma)
    return (v_own - p_own - gamma * (v_rival - p_rival)) / (1.0 - gamma * gamma)


def inverse_demand(v1: float, v2: float, q1: float, q2: float, gamma: float) -> tuple[float, float]:
    """Prices that clear quantities ``(q1, q2)``."""
    return v1 - q1 - gamma * q2, v2 - q2 - gamma * q1


def closed_form_price(v_own: float, v_rival: float, gamma: float) -> float:
    """Nash equilibrium price ``((2 - g^2) v_own - g v_rival) / (4 - g^2)``."""
    _check_gamma(gamma)
    g2 = gamma * gamma
    return ((2.0 - g2) * v_own - gamma * v_rival) / (4.0 - g2)


def closed_form_profit(v_own: float, v_rival: float, gamma: float) -> float:
    g2 = gamma * gamma
    m = (2.0 - g2) * v_own - gamma * v_rival
    return m * m / ((1.0 - g2) * (4.0 - g2) ** 2)


def regime_qualities(scenario: ScenarioConfig, regime: Regime | str) -> tuple[float, float]:
    """Updated qualities at full contribution."""
    if Regime(regime) is Regime.ML:
        return scenario.v1 + scenario.f(scenario.d1), scenario.v2 + scenario.f(scenario.d2)
    boost = scenario.f(scenario.endowment.total)
    return scenario.v1 + boost, scenario.v2 + boost


@dataclass(frozen=True)
class EquilibriumOutcome:
    regime: Regime
    gamma: float
    quality: tuple[float, float]
    price: tuple[float, float]
    quantity: tuple[float, float]
    profit: tuple[float, float]

    def as_dict(self) -> dict:
        r = self.regime.value
        out = {}
        for i in (0, 1):
            n = i + 1
            out[f"v{n}_{r}"] = self.quality[i]
            out[f"p{n}_{r}"] = self.price[i]
            out[f"q{n}_{r}"] = self.quantity[i]
            out[f"profit{n}_{r}"] = self.profit[i]
        return out


def outcome_from_qualities(regime: Regime | str, v1: float, v2: float, gamma: float) -> EquilibriumOutcome:
    """Equilibrium for given updated qualities, without re-checking the condition."""
    regime = Regime(regime)
    p1 = closed_form_price(v1, v2, gamma)
    p2 = closed_form_price(v2, v1, gamma)
    q1 = direct_demand(v1, v2, p1, p2, gamma)
    q2 = direct_demand(v2, v1, p2, p1, gamma)
    if q1 < 0 or q2 < 0 or p1 < 0 or p2 < 0:
        raise NegativeDemandError(
            f"{regime.value}: negative equilibrium price/quantity "
            f"(p=({p1:.6g}, {p2:.6g}), q=({q1:.6g}, {q2:.6g}))"
        )
    profit = (p1 * q1, p2 * q2)
    for pi, (vo, vr) in zip(profit, ((v1, v2), (v2, v1))):
        ref = closed_form_profit(vo, vr, gamma)
        if abs(pi - ref) > EPS_NUM * max(1.0, abs(ref)):  # pragma: no cover - algebraic identity
            raise ArithmeticError(f"profit {pi} disagrees with closed form {ref}")
    return EquilibriumOutcome(regime, gamma, (v1, v2), (p1, p2), (q1, q2), profit)


def equilibrium_outcome(scenario: ScenarioConfig, regime: Regime | str, *, checked: bool = True) -> EquilibriumOutcome:
    """Prices, quantities and profits under ``regime`` at full contribution.

    Raises :class:`~flcompete.model.ConditionViolation` if the scenario does not
    keep both firms in the market (skip the check with ``checked=False`` when
    the caller has already validated it).
    """
    if checked:
        require_condition1(scenario)
    v1, v2 = regime_qualities(scenario, regime)
    return outcome_from_qualities(regime, v1, v2, scenario.gamma)


def both_outcomes(scenario: ScenarioConfig, *, checked: bool = True) -> tuple[EquilibriumOutcome, EquilibriumOutcome]:
    if checked:
        require_condition1(scenario)
    return (
        equilibrium_outcome(scenario, Regime.ML, checked=False),
        equilibrium_outcome(scenario, Regime.FL, checked=False),
    )
