import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flcompete import (
    ConditionViolation,
    DomainError,
    EffectivenessSpec,
    Regime,
    ScenarioConfig,
    competition_bound,
    decide_regime,
    lemma3_check,
    theorem1_ratio,
)

from scenario_factory import baseline, random_scenarios

# 40-digit mpmath: (sqrt(110) - sqrt(10)) / (sqrt(110) - 10)
RATIO_SQRT_100_10 = 15.009186031177736


def test_ratio_equal_endowments_is_one():
    for eff in (EffectivenessSpec.sqrt(), EffectivenessSpec.log1p(), EffectivenessSpec.satexp()):
        assert theorem1_ratio(eff, 40.0, 40.0) == 1.0


def test_ratio_baseline_value():
    r = theorem1_ratio(EffectivenessSpec.sqrt(), 100.0, 10.0)
    assert r == pytest.approx(RATIO_SQRT_100_10, rel=1e-13)
    assert r == pytest.approx(15.009, abs=1e-3)


def test_ratio_is_orientation_free():
    eff = EffectivenessSpec.log1p()
    assert theorem1_ratio(eff, 100.0, 10.0) == theorem1_ratio(eff, 10.0, 100.0)


def test_ratio_without_free_rider_information():
    assert math.isinf(theorem1_ratio(EffectivenessSpec.sqrt(), 100.0, 0.0))
    with pytest.raises(DomainError):
        theorem1_ratio(EffectivenessSpec.sqrt(), 0.0, 0.0)
    with pytest.raises(DomainError):
        theorem1_ratio(EffectivenessSpec.sqrt(), -1.0, 3.0)


def test_competition_bound_examples():
    assert math.isinf(competition_bound(0.0))
    assert competition_bound(0.5) == pytest.approx(3.5, rel=1e-15)
    assert competition_bound(0.95) == pytest.approx(1.1552631578947368, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(g=st.floats(1e-6, 0.999), h=st.floats(1e-6, 1e-3))
def test_competition_bound_decreasing(g, h):
    g2 = min(g + h, 0.9999)
    if g2 > g:
        assert competition_bound(g2) < competition_bound(g)


@settings(max_examples=100, deadline=None)
@given(big=st.floats(5, 500), small=st.floats(0.5, 400), bump=st.floats(0.01, 50))
def test_ratio_falls_as_free_rider_endowment_grows(big, small, bump):
    small = min(small, big - 0.5)
    if small <= 0.5 or small + bump >= big:
        return
    for eff in (EffectivenessSpec.sqrt(), EffectivenessSpec.log1p()):
        assert theorem1_ratio(eff, big, small + bump) < theorem1_ratio(eff, big, small)


# --------------------------------------------------------------- decisions


def test_low_substitution_forms_federation():
    dec = decide_regime(baseline(gamma=0.05))
    assert dec.chosen is Regime.FL and dec.criterion_verdict is Regime.FL
    assert dec.delta1 > 0 and dec.delta2 > 0


def test_baseline_stays_separate():
    dec = decide_regime(baseline(gamma=0.5))
    assert dec.chosen is Regime.ML and dec.criterion_verdict is Regime.ML
    assert dec.delta1 < 0 < dec.delta2
    assert dec.bound == 3.5
    assert dec.free_rider == 2 and dec.rival == 1


def test_equal_endowments_always_federate():
    for g in (0.0, 0.3, 0.6):
        dec = decide_regime(baseline(gamma=g, d1=10.0))
        assert dec.ratio == 1.0
        assert dec.chosen is Regime.FL and dec.criterion_verdict is Regime.FL


def test_gamma_zero_federates():
    dec = decide_regime(baseline(gamma=0.0))
    assert dec.chosen is Regime.FL and math.isinf(dec.bound)


def test_invalid_scenario_is_refused():
    with pytest.raises(ConditionViolation):
        decide_regime(baseline(gamma=0.95))


def test_mirrored_scenario_swaps_roles():
    s = ScenarioConfig.build(20.0, 15.0, 0.5, 10.0, 100.0)
    dec = decide_regime(s)
    assert dec.mirrored and dec.free_rider == 1 and dec.rival == 2
    assert dec.ratio == pytest.approx(RATIO_SQRT_100_10, rel=1e-13)
    # firm 1 is the free rider and always gains
    assert dec.delta1 > 0
    assert dec.delta(2) == dec.delta2


def test_lemma3_on_baseline():
    assert lemma3_check(baseline(gamma=0.5)) == (True, False)
    assert lemma3_check(baseline(gamma=0.05)) == (True, True)


@pytest.mark.parametrize("family", ["sqrt", "log1p", "satexp"])
def test_verdict_flips_once_along_gamma(family):
    s = baseline(family=family)
    verdicts = []
    for g in np.linspace(0.0, 0.5, 101):
        verdicts.append(decide_regime(s.replace(gamma=float(g))).chosen)
    flips = sum(a is not b for a, b in zip(verdicts, verdicts[1:]))
    assert verdicts[0] is Regime.FL and verdicts[-1] is Regime.ML and flips == 1


def test_profit_and_criterion_agree_on_fuzz(fuzz_1000):
    extra = random_scenarios(9000, seed=77)
    for s in list(fuzz_1000) + extra:
        dec = decide_regime(s)  # raises on any disagreement beyond a tie
        near_tie = math.isfinite(dec.ratio) and abs(dec.bound - dec.ratio) <= 1e-9 * max(1.0, dec.bound)
        assert dec.chosen is dec.criterion_verdict or near_tie


def test_free_rider_always_gains_on_fuzz(fuzz_1000):
    for s in fuzz_1000:
        dec = decide_regime(s)
        assert dec.delta(dec.free_rider) > 0


@settings(max_examples=80, deadline=None)
@given(shift=st.floats(-5, 5), g=st.floats(0, 0.6))
def test_criterion_ignores_base_qualities(shift, g):
    # the closed-form verdict depends on gamma and f only
    s = ScenarioConfig.build(25.0 + shift, 20.0 + shift, g, 80.0, 20.0)
    t = ScenarioConfig.build(22.0 + shift, 21.0 + shift, g, 80.0, 20.0)
    a, b = decide_regime(s), decide_regime(t)
    assert a.criterion_verdict is b.criterion_verdict
    assert a.chosen is b.chosen
