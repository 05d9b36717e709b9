"""Game primitives, effectiveness functions and the interior-duopoly condition.

Everything here is immutable. A :class:`ScenarioConfig` bundles the market
(qualities and substitution degree), the information endowments of the two
firms and the training-effectiveness function ``f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

#: relative comparison tolerance used across the package
EPS_NUM = 1e-9

#: points per axis on the endowment grid for the quality-ratio check
CONDITION_GRID = 8

#: points used when checking monotonicity / concavity of ``f``
SHAPE_POINTS = 1000


class ModelError(ValueError):
    """Base class for invalid game instances."""


class DomainError(ModelError):
    """An argument lies outside the domain of an operation."""


class ConditionViolation(ModelError):
    """A scenario fails the interior-duopoly condition."""

    def __init__(self, message: str, report: "ConditionReport | None" = None):
        super().__init__(message)
        self.report = report


class Regime(str, Enum):
    ML = "ml"
    FL = "fl"


@dataclass(frozen=True)
class MarketPrimitives:
    v1: float
    v2: float
    gamma: float

    def __post_init__(self):
        if not (self.v2 > 0):
            raise DomainError(f"v2 must be positive, got {self.v2}")
        if self.v1 < self.v2:
            raise DomainError(
                f"firm 1 is the dominant firm: need v1 >= v2, got {self.v1} < {self.v2}"
            )
        if not (0.0 <= self.gamma < 1.0):
            raise DomainError(f"gamma must lie in [0, 1), got {self.gamma}")


@dataclass(frozen=True)
class InformationEndowment:
    d1: float
    d2: float

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise DomainError(f"endowments must be non-negative, got ({self.d1}, {self.d2})")
        if self.d1 == 0 and self.d2 == 0:
            raise DomainError("at least one endowment must be strictly positive")

    @property
    def mirrored(self) -> bool:
        """True when firm 2 holds (weakly) more information."""
        return self.d2 >= self.d1

    @property
    def free_rider(self) -> int:
        """Index of the firm holding less information (ties go to firm 1)."""
        return 1 if self.mirrored else 2

    @property
    def total(self) -> float:
        return self.d1 + self.d2


_FAMILIES = ("sqrt", "log1p", "satexp")


@dataclass(frozen=True)
class EffectivenessSpec:
    """Training effectiveness ``f``: quality gain from ``r`` units of information.

    Families
    --------
    ``sqrt``
        ``f(r) = sqrt(r)``
    ``log1p``
        ``f(r) = ln(1 + r)``
    ``satexp``
        ``f(r) = a - b * exp(-r / c)`` with ``b > 0`` and ``c > 0``.
        This may be negative for small ``r``; only its shape matters.
        Strict concavity is only resolvable in double precision on domains
        up to roughly ``10 c``; wider domains fail :meth:`verify_shape`.
    """

    family: str = "sqrt"
    a: float | None = None
    b: float | None = None
    c: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown effectiveness family {self.family!r}")
        if self.family == "satexp":
            if self.a is None or self.b is None or self.c is None:
                raise DomainError("satexp needs parameters a, b, c")
            if not (self.b > 0 and self.c > 0):
                raise DomainError(f"satexp needs b > 0 and c > 0, got b={self.b}, c={self.c}")

    @classmethod
    def sqrt(cls) -> "EffectivenessSpec":
        return cls("sqrt")

    @classmethod
    def log1p(cls) -> "EffectivenessSpec":
        return cls("log1p")

    @classmethod
    def satexp(cls, a: float = 1.0, b: float = 10.0, c: float = 100.0) -> "EffectivenessSpec":
        return cls("satexp", a, b, c)

    def __call__(self, r):
        return eval_effectiveness(self, r)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        if self.family == "sqrt":
            return 0.5 / np.sqrt(r)
        if self.family == "log1p":
            return 1.0 / (1.0 + r)
        return self.b / self.c * np.exp(-r / self.c)

    def shape_margins(self, upper: float, points: int = SHAPE_POINTS) -> tuple[float, float]:
        """Smallest first difference and largest second difference on ``(0, upper]``."""
        x = np.linspace(upper / points, upper, points)
        y = eval_effectiveness(self, x)
        d1 = np.diff(y)
        d2 = np.diff(y, n=2)
        return float(d1.min()), float(d2.max())

    def verify_shape(self, upper: float, points: int = SHAPE_POINTS) -> None:
        """Raise :class:`DomainError` unless ``f`` is strictly increasing and concave."""
        if upper <= 0:
            return
        inc, conc = self.shape_margins(upper, points)
        if not inc > 0:
            raise DomainError(f"{self.family}: f is not strictly increasing on (0, {upper}]")
        if not conc < 0:
            raise DomainError(f"{self.family}: f is not strictly concave on (0, {upper}]")

    def label(self) -> str:
        if self.family == "satexp":
            return f"f(x)={self.a:g}-{self.b:g}exp(-x/{self.c:g})"
        return {"sqrt": "f(x)=sqrt(x)", "log1p": "f(x)=ln(x+1)"}[self.family]


def eval_effectiveness(spec: EffectivenessSpec, r):
    """Evaluate ``f(r)``; accepts scalars or arrays, rejects negative volumes."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0):
        raise DomainError(f"information volume must be non-negative, got {r}")
    if spec.family == "sqrt":
        out = np.sqrt(arr)
    elif spec.family == "log1p":
        out = np.log1p(arr)
    else:
        out = spec.a - spec.b * np.exp(-arr / spec.c)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ScenarioConfig:
    market: MarketPrimitives
    endowment: InformationEndowment
    effectiveness: EffectivenessSpec = field(default_factory=EffectivenessSpec.sqrt)

    def __post_init__(self):
        self.effectiveness.verify_shape(self.endowment.total)

    @classmethod
    def build(cls, v1, v2, gamma, d1, d2, effectiveness=None) -> "ScenarioConfig":
        return cls(
            MarketPrimitives(float(v1), float(v2), float(gamma)),
            InformationEndowment(float(d1), float(d2)),
            effectiveness or EffectivenessSpec.sqrt(),
        )

    def replace(self, **changes) -> "ScenarioConfig":
        """Copy with any of v1, v2, gamma, d1, d2, effectiveness swapped out."""
        values = dict(
            v1=self.market.v1,
            v2=self.market.v2,
            gamma=self.market.gamma,
            d1=self.endowment.d1,
            d2=self.endowment.d2,
            effectiveness=self.effectiveness,
        )
        unknown = set(changes) - set(values)
        if unknown:
            raise TypeError(f"unknown scenario fields: {sorted(unknown)}")
        values.update(changes)
        return ScenarioConfig.build(**values)

    # shorthands
    @property
    def v1(self) -> float:
        return self.market.v1

    @property
    def v2(self) -> float:
        return self.market.v2

    @property
    def gamma(self) -> float:
        return self.market.gamma

    @property
    def d1(self) -> float:
        return self.endowment.d1

    @property
    def d2(self) -> float:
        return self.endowment.d2

    def f(self, r):
        return eval_effectiveness(self.effectiveness, r)


def updated_quality(
    scenario: ScenarioConfig, firm: int, regime: Regime | str, r_own: float, r_rival: float
) -> float:
    """Quality of ``firm`` after training on its own data (ML) or the pool (FL)."""
    regime = Regime(regime)
    if firm not in (1, 2):
        raise DomainError(f"firm must be 1 or 2, got {firm}")
    own_cap, rival_cap = (scenario.d1, scenario.d2) if firm == 1 else (scenario.d2, scenario.d1)
    if not (0 <= r_own <= own_cap) or not (0 <= r_rival <= rival_cap):
        raise DomainError(
            f"contributions ({r_own}, {r_rival}) exceed endowments ({own_cap}, {rival_cap})"
        )
    v = scenario.v1 if firm == 1 else scenario.v2
    if regime is Regime.ML:
        return v + scenario.f(r_own)
    return v + scenario.f(r_own + r_rival)


def competition_bound(gamma: float) -> float:
    """``(2 - gamma**2) / gamma``; infinite at ``gamma = 0``."""
    if not (0.0 <= gamma <= 1.0):
        raise DomainError(f"gamma must lie in [0, 1], got {gamma}")
    if gamma == 0.0:
        return math.inf
    return (2.0 - gamma * gamma) / gamma


def gamma_for_bound(ratio: float) -> float:
    """Inverse of :func:`competition_bound` on ``(0, 1]`` for ``ratio >= 1``."""
    if math.isinf(ratio):
        return 0.0
    if ratio < 1.0:
        raise DomainError(f"bound is at least 1 on (0, 1], got {ratio}")
    # positive root of g^2 + ratio*g - 2, written to avoid cancellation
    return 4.0 / (ratio + math.sqrt(ratio * ratio + 8.0))


@dataclass(frozen=True)
class ConditionReport:
    part_i_ok: bool
    part_ii_ok: bool
    binding_margin: float
    checked_points: tuple[tuple[float, float], ...]
    qualities_ok: bool = True
    max_quality_ratio: float = 1.0
    messages: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.part_i_ok and self.part_ii_ok and self.qualities_ok


def condition_grid(d1: float, d2: float, n: int = CONDITION_GRID) -> list[tuple[float, float]]:
    """Contribution pairs used to check the ML part of the condition."""
    axis1 = np.linspace(d1 / n, d1, n) if d1 > 0 else np.zeros(1)
    axis2 = np.linspace(d2 / n, d2, n) if d2 > 0 else np.zeros(1)
    pts = [(float(a), float(b)) for a in axis1 for b in axis2]
    positive = [d for d in (d1, d2) if d > 0]
    eps = 1e-6 * min(positive)
    pts.append((eps if d1 > 0 else 0.0, eps if d2 > 0 else 0.0))
    if (d1, d2) not in pts:
        pts.append((float(d1), float(d2)))
    return pts


def part_ii_ratios(v1, v2, d1, d2, effectiveness: EffectivenessSpec):
    """ML quality ratios over the grid, oriented both ways.

    Returns ``(points, ratio_12, ratio_21, q1, q2)`` where ``ratio_12`` is
    ``(v1 + f(R1)) / (v2 + f(R2))``.
    """
    pts = condition_grid(d1, d2)
    arr = np.array(pts)
    q1 = v1 + eval_effectiveness(effectiveness, arr[:, 0])
    q2 = v2 + eval_effectiveness(effectiveness, arr[:, 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        r12 = q1 / q2
        r21 = q2 / q1
    return pts, r12, r21, q1, q2


def check_condition1_ii(v1, v2, gamma, d1, d2, effectiveness: EffectivenessSpec) -> bool:
    """Part (ii) alone, for raw (possibly relabelled) firm data."""
    _, r12, r21, q1, q2 = part_ii_ratios(v1, v2, d1, d2, effectiveness)
    if np.any(q1 <= 0) or np.any(q2 <= 0):
        return False
    bound = competition_bound(gamma)
    return bool(np.all(r12 < bound) and np.all(r21 < bound))


def check_condition1(scenario: ScenarioConfig) -> ConditionReport:
    """Check that both firms stay in the market at base and ML-updated qualities.

    Part (i) compares ``v1 / v2`` with ``(2 - g^2) / g``. Part (ii) does the
    same for ML-updated qualities at every grid point, both orderings. FL
    qualities are covered by part (i) since both firms get the same boost.
    Updated qualities (ML grid and FL corner) must also be strictly positive.
    """
    v1, v2, g = scenario.v1, scenario.v2, scenario.gamma
    bound = competition_bound(g)
    msgs = []

    base_ratio = v1 / v2
    part_i = 1.0 <= base_ratio < bound
    slacks = [bound - base_ratio]
    if not part_i:
        msgs.append(f"part (i): v1/v2 = {base_ratio:.6g} not below (2-g^2)/g = {bound:.6g}")

    pts, r12, r21, q1, q2 = part_ii_ratios(v1, v2, scenario.d1, scenario.d2, scenario.effectiveness)
    fl_q = np.array([v1, v2]) + scenario.f(scenario.endowment.total)
    qualities_ok = bool(np.all(q1 > 0) and np.all(q2 > 0) and np.all(fl_q > 0))
    if not qualities_ok:
        msgs.append("updated qualities must be strictly positive")
        part_ii = False
        max_ratio = math.inf
    else:
        max_ratio = float(max(r12.max(), r21.max()))
        part_ii = max_ratio < bound
        slacks.append(bound - max_ratio)
        if not part_ii:
            msgs.append(f"part (ii): ML quality ratio {max_ratio:.6g} not below {bound:.6g}")

    return ConditionReport(
        part_i_ok=part_i,
        part_ii_ok=part_ii,
        binding_margin=float(min(slacks)) if qualities_ok else -math.inf,
        checked_points=tuple(pts),
        qualities_ok=qualities_ok,
        max_quality_ratio=max(max_ratio, base_ratio),
        messages=tuple(msgs),
    )


def max_valid_gamma(scenario: ScenarioConfig) -> float:
    """Largest substitution degree for which the scenario still passes the condition.

    The binding quality ratio does not depend on gamma, so the supremum is the
    root of ``(2 - g^2)/g = ratio``; we step just inside it. Returns ``nan``
    when updated qualities are not all positive.
    """
    rep = check_condition1(scenario.replace(gamma=0.0))
    if not rep.qualities_ok:
        return math.nan
    g = gamma_for_bound(rep.max_quality_ratio)
    g = min(g, math.nextafter(1.0, 0.0))
    for _ in range(64):
        if check_condition1(scenario.replace(gamma=g)).ok:
            return g
        g = math.nextafter(g, 0.0)
    raise RuntimeError("could not locate the condition boundary")  # pragma: no cover


def require_condition1(scenario: ScenarioConfig) -> ConditionReport:
    rep = check_condition1(scenario)
    if not rep.ok:
        raise ConditionViolation("; ".join(rep.messages) or "condition violated", rep)
    return rep
