"""Numeric cross-checks that do not rely on the closed-form prices.

The routines here re-derive the equilibrium by search and iteration so that
the analytical layer in :mod:`flcompete.equilibrium` can be tested against
something independent of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from .equilibrium import direct_demand, regime_qualities
from .model import DomainError, Regime, ScenarioConfig, competition_bound

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

DEFAULT_TOLERANCE = 1e-10
MAX_ITERATIONS = 10_000


class BestResponse(NamedTuple):
    price: float
    interior: bool  # False when no price earns positive profit


def _golden_max(fn, lo: float, hi: float, tol: float, max_iter: int = 400) -> float:
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = fn(x1)
    return 0.5 * (a + b)


def best_response_price(v_own: float, v_rival: float, gamma: float, p_rival: float) -> BestResponse:
    """Profit-maximising own price against ``p_rival``, by golden-section search.

    The bracket is narrowed with float profits first and finished with profits
    in exact rational arithmetic: in floats the flat top of the profit curve
    limits the argmax to about ``sqrt(machine eps)`` relative accuracy.
    """
    if not (0.0 <= gamma < 1.0):
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    choke = v_own - gamma * (v_rival - p_rival)
    if choke <= 0:
        return BestResponse(0.0, False)
    hi = max(v_own, choke)

    def profit(p: float) -> float:
        return p * direct_demand(v_own, v_rival, p, p_rival, gamma)

    g = Fraction(gamma)
    denom = 1 - g * g
    vo, vr, pr = Fraction(v_own), Fraction(v_rival), Fraction(p_rival)

    def profit_exact(p: float) -> Fraction:
        pf = Fraction(p)
        return pf * (vo - pf - g * (vr - pr)) / denom

    coarse = 1e-6 * hi
    centre = _golden_max(profit, 0.0, hi, coarse)
    lo, up = max(0.0, centre - coarse), min(hi, centre + coarse)
    return BestResponse(_golden_max(profit_exact, lo, up, 1e-13 * max(1.0, hi)), True)


def analytic_best_response(v_own, v_rival, gamma, p_rival):
    """Linear best response from the first-order condition, floored at zero."""
    return np.maximum(0.5 * (v_own - gamma * v_rival + gamma * p_rival), 0.0)


@dataclass
class FixedPointTrace:
    iterates: list[tuple[float, float]] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    residual: float = math.inf

    @property
    def price(self) -> tuple[float, float]:
        return self.iterates[-1]


def _br_pair(v1, v2, gamma, p, method):
    if method == "golden":
        return (
            best_response_price(v1, v2, gamma, p[1]).price,
            best_response_price(v2, v1, gamma, p[0]).price,
        )
    return (
        float(analytic_best_response(v1, v2, gamma, p[1])),
        float(analytic_best_response(v2, v1, gamma, p[0])),
    )


def iterate_to_fixed_point(
    scenario: ScenarioConfig,
    regime: Regime | str,
    start: tuple[float, float] = (0.0, 0.0),
    tolerance: float = DEFAULT_TOLERANCE,
    *,
    max_iter: int = MAX_ITERATIONS,
    method: str = "analytic",
) -> FixedPointTrace:
    """Alternate best responses (firm 1, then firm 2) until prices settle.

    ``method="golden"`` uses :func:`best_response_price` for each step, which
    is much slower but does not use the first-order condition at all.
    """
    if method not in ("analytic", "golden"):
        raise ValueError(f"unknown best-response method {method!r}")
    v1, v2 = regime_qualities(scenario, regime)
    g = scenario.gamma
    p = (float(start[0]), float(start[1]))
    trace = FixedPointTrace(iterates=[p])

    def residual(p):
        b = _br_pair(v1, v2, g, p, method)
        return max(abs(b[0] - p[0]), abs(b[1] - p[1]))

    trace.residual = residual(p)
    while trace.residual >= tolerance and trace.iterations < max_iter:
        if method == "golden":
            p1 = best_response_price(v1, v2, g, p[1]).price
            p2 = best_response_price(v2, v1, g, p1).price
        else:
            p1 = float(analytic_best_response(v1, v2, g, p[1]))
            p2 = float(analytic_best_response(v2, v1, g, p1))
        p = (p1, p2)
        trace.iterates.append(p)
        trace.iterations += 1
        trace.residual = residual(p)
    trace.converged = trace.residual < tolerance
    return trace


def _stage2_prices(v1, v2, gamma, tol=1e-13, max_iter=MAX_ITERATIONS):
    """Vectorised best-response iteration over arrays of qualities."""
    p1 = np.zeros_like(v1)
    p2 = np.zeros_like(v2)
    for _ in range(max_iter):
        n1 = analytic_best_response(v1, v2, gamma, p2)
        n2 = analytic_best_response(v2, v1, gamma, n1)
        done = max(np.max(np.abs(n1 - p1)), np.max(np.abs(n2 - p2))) < tol * max(1.0, np.max(np.abs(n1)))
        p1, p2 = n1, n2
        if done:
            break
    return p1, p2


def stage2_profits(scenario, regime, r1, r2, f=None):
    """Equilibrium profits when contributions are ``(r1, r2)`` (arrays allowed).

    Prices are re-solved by best-response iteration, not the closed form.
    """
    f = f or scenario.f
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if Regime(regime) is Regime.ML:
        v1 = scenario.v1 + f(r1)
        v2 = scenario.v2 + f(r2)
    else:
        boost = f(r1 + r2)
        v1 = scenario.v1 + boost
        v2 = scenario.v2 + boost
    v1 = np.broadcast_to(np.asarray(v1, dtype=float), np.broadcast(r1, r2).shape).copy()
    v2 = np.broadcast_to(np.asarray(v2, dtype=float), v1.shape).copy()
    g = scenario.gamma
    p1, p2 = _stage2_prices(v1, v2, g)
    q1 = direct_demand(v1, v2, p1, p2, g)
    q2 = direct_demand(v2, v1, p2, p1, g)
    return p1 * q1, p2 * q2, v1, v2


@dataclass(frozen=True)
class DerivativeSignReport:
    regime: Regime
    min_derivative: tuple[float, float]
    evaluated: int
    excluded: tuple[tuple[float, float], ...]

    @property
    def positive(self) -> bool:
        return all(d > 0 for d in self.min_derivative if not math.isnan(d))


def info_derivative_sign(
    scenario: ScenarioConfig,
    regime: Regime | str,
    grid_density: int = 20,
    f: Callable | None = None,
) -> DerivativeSignReport:
    """Smallest finite-difference slope of each firm's profit in its own contribution.

    Central differences with step ``1e-4 * D_i`` at every grid point of
    ``(0, D1] x (0, D2]``. Grid points where a firm would leave the market are
    dropped and listed in ``excluded``. ``f`` overrides the scenario's
    effectiveness function (used for negative controls).
    """
    regime = Regime(regime)
    f = f or scenario.f
    d1, d2 = scenario.d1, scenario.d2
    ax1 = np.linspace(d1 / grid_density, d1, grid_density)
    ax2 = np.linspace(d2 / grid_density, d2, grid_density)
    R1, R2 = np.meshgrid(ax1, ax2, indexing="ij")
    R1, R2 = R1.ravel(), R2.ravel()

    _, _, v1, v2 = stage2_profits(scenario, regime, R1, R2, f)
    bound = competition_bound(scenario.gamma)
    with np.errstate(divide="ignore", invalid="ignore"):
        ok = (v1 > 0) & (v2 > 0) & (v1 / v2 < bound) & (v2 / v1 < bound)
    excluded = tuple((float(a), float(b)) for a, b in zip(R1[~ok], R2[~ok]))
    R1, R2 = R1[ok], R2[ok]

    mins = []
    for firm, d in ((1, d1), (2, d2)):
        if d <= 0 or R1.size == 0:
            mins.append(math.nan)
            continue
        h = 1e-4 * d
        if firm == 1:
            up = stage2_profits(scenario, regime, R1 + h, R2, f)[0]
            dn = stage2_profits(scenario, regime, R1 - h, R2, f)[0]
        else:
            up = stage2_profits(scenario, regime, R1, R2 + h, f)[1]
            dn = stage2_profits(scenario, regime, R1, R2 - h, f)[1]
        mins.append(float(np.min((up - dn) / (2 * h))))
    return DerivativeSignReport(regime, (mins[0], mins[1]), int(R1.size), excluded)


@dataclass(frozen=True)
class GridEquilibrium:
    price: tuple[float, float]
    cell: tuple[float, float]
    iterations: int
    settled: bool


def grid_equilibrium(scenario: ScenarioConfig, regime: Regime | str, price_steps: int = 1000) -> GridEquilibrium:
    """Alternating exhaustive best responses on a price lattice ``[0, v_i]``."""
    if price_steps < 100:
        raise DomainError(f"price_steps must be at least 100, got {price_steps}")
    v1, v2 = regime_qualities(scenario, regime)
    g = scenario.gamma
    lat1 = np.linspace(0.0, v1, price_steps)
    lat2 = np.linspace(0.0, v2, price_steps)

    def argmax(lat, vo, vr, pr):
        prof = lat * direct_demand(vo, vr, lat, pr, g)
        return int(np.argmax(prof))

    i1 = i2 = 0
    seen = set()
    settled = False
    it = 0
    for it in range(1, 10 * price_steps + 1):
        n1 = argmax(lat1, v1, v2, lat2[i2])
        n2 = argmax(lat2, v2, v1, lat1[n1])
        if (n1, n2) == (i1, i2):
            settled = True
            break
        if (n1, n2) in seen:
            i1, i2 = n1, n2
            break
        seen.add((n1, n2))
        i1, i2 = n1, n2
    return GridEquilibrium(
        (float(lat1[i1]), float(lat2[i2])),
        (float(lat1[1] - lat1[0]), float(lat2[1] - lat2[0])),
        it,
        settled,
    )
