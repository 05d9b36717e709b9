import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flcompete import (
    DomainError,
    NegativeDemandError,
    Regime,
    ScenarioConfig,
    closed_form_price,
    direct_demand,
    equilibrium_outcome,
    iterate_to_fixed_point,
)
from flcompete.equilibrium import closed_form_profit, inverse_demand, outcome_from_qualities

from scenario_factory import baseline, random_scenarios

# frozen from 40-digit mpmath evaluation of the closed forms
P1_ML, P2_ML = 11.578362978644216, 4.4757295747452437
Q1_ML = 15.437817304858955
P1_FL_BASE = 10.829362827233838


def _grid_argmax_profit(v, steps=2_000_001):
    """Monopoly price by brute-force search (gamma = 0 decouples the firms)."""
    p = np.linspace(0.0, v, steps)
    prof = p * (v - p)
    i = int(np.argmax(prof))
    return p[i], prof[i]


# -------------------------------------------------------------- demand


def test_demand_independent_markets():
    assert direct_demand(30, 99, 15, 3, 0.0) == 15.0


def test_demand_at_ml_equilibrium():
    q = direct_demand(30.0, 15 + math.sqrt(10), P1_ML, P2_ML, 0.5)
    assert q == pytest.approx(15.4378, abs=1e-4)
    assert q == pytest.approx(P1_ML / (1 - 0.25), rel=1e-12)


def test_demand_rejects_gamma_one():
    with pytest.raises(DomainError):
        direct_demand(1, 1, 0, 0, 1.0)


@settings(max_examples=200, deadline=None)
@given(
    v1=st.floats(1, 100),
    v2=st.floats(1, 100),
    q1=st.floats(0, 50),
    q2=st.floats(0, 50),
    g=st.floats(0, 0.95),
)
def test_demand_inverts_inverse_demand(v1, v2, q1, q2, g):
    p1, p2 = inverse_demand(v1, v2, q1, q2, g)
    assert direct_demand(v1, v2, p1, p2, g) == pytest.approx(q1, abs=1e-9 * (1 + v1 + v2) / (1 - g * g))
    assert direct_demand(v2, v1, p2, p1, g) == pytest.approx(q2, abs=1e-9 * (1 + v1 + v2) / (1 - g * g))


# --------------------------------------------------------------- price


def test_price_gamma_zero_is_half_quality():
    assert closed_form_price(37.0, 5.0, 0.0) == 18.5


def test_price_fl_baseline():
    v_own = 20 + math.sqrt(110)
    v_rival = 15 + math.sqrt(110)
    p = closed_form_price(v_own, v_rival, 0.5)
    assert p == pytest.approx(10.8294, abs=1e-4)
    assert p == pytest.approx(P1_FL_BASE, rel=1e-14)
    trace = iterate_to_fixed_point(baseline(), "fl")
    assert trace.price[0] == pytest.approx(p, rel=1e-10)


@pytest.mark.parametrize("g", [0.0, 0.1, 0.5, 0.9, 0.99])
def test_price_symmetric_firms(g):
    p = closed_form_price(25.0, 25.0, g)
    assert p == pytest.approx(25.0 * (2 - g * g - g) / (4 - g * g), rel=1e-14)
    # (2 - g^2 - g) / (4 - g^2) = (1 - g)(2 + g) / ((2 - g)(2 + g))
    assert p == pytest.approx(25.0 * (1 - g) / (2 - g), rel=1e-13)


# ---------------------------------------------------------- outcomes


def test_outcome_gamma_zero_against_grid_search():
    s = baseline(gamma=0.0)
    ml = equilibrium_outcome(s, Regime.ML)
    fl = equilibrium_outcome(s, Regime.FL)
    _, prof1 = _grid_argmax_profit(30.0)
    _, prof2 = _grid_argmax_profit(15 + math.sqrt(10))
    assert ml.profit[0] == pytest.approx(225.0, rel=1e-12)
    assert ml.profit[0] == pytest.approx(prof1, rel=1e-9)
    assert ml.profit[1] == pytest.approx(prof2, rel=1e-9)
    assert ml.profit[1] == pytest.approx(82.4670824512628, rel=1e-12)
    _, f1 = _grid_argmax_profit(20 + math.sqrt(110))
    _, f2 = _grid_argmax_profit(15 + math.sqrt(110))
    assert fl.profit[0] == pytest.approx(232.38, abs=1e-2)
    assert fl.profit[1] == pytest.approx(162.41, abs=1e-2)
    assert fl.profit[0] == pytest.approx(f1, rel=1e-9)
    assert fl.profit[1] == pytest.approx(f2, rel=1e-9)


def test_outcome_ml_baseline_values():
    out = equilibrium_outcome(baseline(), "ml")
    assert out.price == pytest.approx((P1_ML, P2_ML), rel=1e-13)
    assert out.quantity[0] == pytest.approx(Q1_ML, rel=1e-13)
    assert out.regime is Regime.ML and out.gamma == 0.5


@pytest.mark.parametrize("regime", ["ml", "fl"])
@pytest.mark.parametrize("g", [0.0, 0.3, 0.8])
def test_symmetric_scenario_symmetric_outcome(regime, g):
    out = equilibrium_outcome(ScenarioConfig.build(18, 18, g, 40, 40), regime)
    assert out.price[0] == out.price[1]
    assert out.quantity[0] == out.quantity[1]
    assert out.profit[0] == out.profit[1]


def test_profit_identities_on_random_scenarios():
    for s in random_scenarios(300, seed=3):
        for regime in Regime:
            out = equilibrium_outcome(s, regime)
            g2 = s.gamma**2
            for i in (0, 1):
                assert out.quantity[i] > 0
                assert out.quantity[i] == pytest.approx(out.price[i] / (1 - g2), rel=1e-9)
                assert out.profit[i] == pytest.approx(out.price[i] ** 2 / (1 - g2), rel=1e-9)
                assert out.profit[i] == pytest.approx(out.price[i] * out.quantity[i], rel=1e-12)


def test_fl_qualities_dominate_ml():
    for s in random_scenarios(200, seed=4):
        ml = equilibrium_outcome(s, "ml")
        fl = equilibrium_outcome(s, "fl")
        assert fl.quality[0] > ml.quality[0]
        assert fl.quality[1] > ml.quality[1]


@settings(max_examples=200, deadline=None)
@given(
    v_own=st.floats(5, 60),
    v_rival=st.floats(5, 60),
    bump=st.floats(1e-3, 5),
    g=st.floats(0, 0.95),
)
def test_price_and_profit_increase_in_own_quality(v_own, v_rival, bump, g):
    if closed_form_price(v_own, v_rival, g) <= 0:
        return
    assert closed_form_price(v_own + bump, v_rival, g) > closed_form_price(v_own, v_rival, g)
    assert closed_form_profit(v_own + bump, v_rival, g) > closed_form_profit(v_own, v_rival, g)


def test_negative_quantity_raises_instead_of_clamping():
    with pytest.raises(NegativeDemandError):
        outcome_from_qualities("ml", 50.0, 5.0, 0.9)


def test_unchecked_path_skips_condition():
    # part (ii) fails at 0.8 for the baseline, FL qualities are still interior
    s = baseline(gamma=0.8)
    with pytest.raises(ValueError):
        equilibrium_outcome(s, "fl")
    out = equilibrium_outcome(s, "fl", checked=False)
    assert out.price[1] > 0
