"""One-parameter sweeps and the profit-vs-substitution figure data."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import consumer_surplus, threshold_report, subsidy_surplus
from .equilibrium import both_outcomes
from .model import EffectivenessSpec, ModelError, Regime, ScenarioConfig, check_condition1
from .regime import decide_regime

SWEEP_PARAMETERS = ("gamma", "d1", "d2")
OUTPUT_COLUMNS = {
    "prices": ["p1_ml", "p2_ml", "p1_fl", "p2_fl"],
    "profits": ["profit1_ml", "profit2_ml", "profit1_fl", "profit2_fl"],
    "deltas": ["delta1", "delta2", "delta_sum"],
    "welfare": ["cs_ml", "cs_fl", "sw_ml", "sw_fl"],
    "regime": ["regime"],
}


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    outputs: tuple[str, ...] = tuple(OUTPUT_COLUMNS)

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(f"parameter must be one of {SWEEP_PARAMETERS}, got {self.parameter!r}")
        if not self.start < self.stop:
            raise ValueError(f"need from < to, got {self.start} >= {self.stop}")
        if self.steps < 2:
            raise ValueError(f"need at least 2 steps, got {self.steps}")
        bad = set(self.outputs) - set(OUTPUT_COLUMNS)
        if bad or not self.outputs:
            raise ValueError(f"outputs must be a non-empty subset of {tuple(OUTPUT_COLUMNS)}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def header(self) -> list[str]:
        cols = [self.parameter, "valid"]
        for name in OUTPUT_COLUMNS:  # canonical order
            if name in self.outputs:
                cols += OUTPUT_COLUMNS[name]
        return cols


def scenario_row(scenario: ScenarioConfig) -> dict:
    """Every sweepable output for one (already validated) scenario."""
    dec = decide_regime(scenario)
    ml, fl = dec.ml, dec.fl
    g = scenario.gamma
    cs_ml = consumer_surplus(*ml.quality, g)
    cs_fl = consumer_surplus(*fl.quality, g)
    return {
        "p1_ml": ml.price[0],
        "p2_ml": ml.price[1],
        "p1_fl": fl.price[0],
        "p2_fl": fl.price[1],
        "profit1_ml": ml.profit[0],
        "profit2_ml": ml.profit[1],
        "profit1_fl": fl.profit[0],
        "profit2_fl": fl.profit[1],
        "delta1": dec.delta1,
        "delta2": dec.delta2,
        "delta_sum": dec.delta1 + dec.delta2,
        "cs_ml": cs_ml,
        "cs_fl": cs_fl,
        "sw_ml": cs_ml + sum(ml.profit),
        "sw_fl": cs_fl + sum(fl.profit),
        "regime": dec.chosen.value,
    }


def sweep_rows(scenario: ScenarioConfig, spec: SweepSpec) -> list[dict]:
    """Rows in parameter order; rows outside the valid region have ``valid = False``."""
    header = spec.header()
    rows = []
    for x in spec.values():
        x = float(x)
        row = {spec.parameter: x, "valid": False}
        try:
            s = scenario.replace(**{spec.parameter: x})
            if check_condition1(s).ok:
                full = scenario_row(s)
                row.update({k: full[k] for k in header[2:]})
                row["valid"] = True
        except ModelError:
            pass
        rows.append(row)
    return rows


# ------------------------------------------------------------------- figure 3

FIGURE_COLUMNS = [
    "gamma",
    "marker",
    "profit1_ml",
    "profit1_fl",
    "profit2_ml",
    "profit2_fl",
    "delta1",
    "delta_sum",
    "fl_region",
    "subsidy_region",
]


def gamma_grid(gamma_max: float, points: int = 400, density: float = 100.0) -> np.ndarray:
    """``points`` values on ``(0, gamma_max]``, geometrically crowded near zero."""
    t = np.arange(1, points + 1) / points
    return gamma_max * (density**t - 1.0) / (density - 1.0)


@dataclass(frozen=True)
class FigureData:
    scenario: ScenarioConfig
    rows: list[dict]
    gamma_star: float | None
    gamma_hat: float | None
    gamma_max: float
    boundary_limited: bool


def figure3_data(
    effectiveness: EffectivenessSpec,
    d1: float,
    d2: float = 10.0,
    v1: float = 20.0,
    v2: float = 15.0,
    points: int = 400,
) -> FigureData:
    """Equilibrium profits under both regimes across the valid substitution range.

    The exact thresholds are inserted as extra rows tagged in the ``marker``
    column, and ``gamma_max`` tags the last row.
    """
    base = ScenarioConfig.build(v1, v2, 0.0, d1, d2, effectiveness)
    rep = threshold_report(base)
    gs, gh, gmax = rep.gamma_star, rep.gamma_hat, rep.gamma_max

    grid = {float(g): "" for g in gamma_grid(gmax, points)}
    grid[gmax] = "gamma_max"
    if gs is not None and gs < gmax:
        grid[gs] = "gamma_star"
    if gh is not None:
        grid[gh] = "gamma_hat"

    subsidy_end = gh if gh is not None else gmax
    rows = []
    for g in sorted(grid):
        s = base.replace(gamma=g)
        ml, fl = both_outcomes(s, checked=False)
        delta1 = fl.profit[0] - ml.profit[0]
        rows.append(
            {
                "gamma": g,
                "marker": grid[g],
                "profit1_ml": ml.profit[0],
                "profit1_fl": fl.profit[0],
                "profit2_ml": ml.profit[1],
                "profit2_fl": fl.profit[1],
                "delta1": delta1,
                "delta_sum": subsidy_surplus(s),
                "fl_region": gs is None or g < gs,
                "subsidy_region": gs is not None and gs <= g <= subsidy_end,
            }
        )
    _assert_free_rider_gains(rows, base)
    return FigureData(base, rows, gs, gh, gmax, rep.boundary_limited)


def _assert_free_rider_gains(rows, scenario):
    fr = scenario.endowment.free_rider
    for r in rows:
        if not r[f"profit{fr}_fl"] > r[f"profit{fr}_ml"]:
            raise AssertionError(
                f"free rider (firm {fr}) loses from pooling at gamma={r['gamma']!r}"
            )


def sign_changes(values, tol: float = 0.0) -> list[int]:
    """Indices ``i`` where ``values[i-1]`` and ``values[i]`` have opposite sign.

    Entries with ``|v| <= tol`` are skipped (treated as touching zero).
    """
    idx, last_sign = [], 0
    for i, v in enumerate(values):
        if abs(v) <= tol or math.isnan(v):
            continue
        sgn = 1 if v > 0 else -1
        if last_sign and sgn != last_sign:
            idx.append(i)
        last_sign = sgn
    return idx


__all__ = [
    "FIGURE_COLUMNS",
    "FigureData",
    "OUTPUT_COLUMNS",
    "Regime",
    "SweepSpec",
    "figure3_data",
    "gamma_grid",
    "scenario_row",
    "sign_changes",
    "sweep_rows",
]
