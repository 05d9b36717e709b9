import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flcompete import (
    ConditionViolation,
    DomainError,
    EffectivenessSpec,
    InformationEndowment,
    MarketPrimitives,
    ScenarioConfig,
    check_condition1,
    equilibrium_outcome,
    eval_effectiveness,
    max_valid_gamma,
    updated_quality,
)
from flcompete.model import check_condition1_ii, condition_grid

from scenario_factory import baseline


# ------------------------------------------------------------ effectiveness


def test_sqrt_values():
    sq = EffectivenessSpec.sqrt()
    assert eval_effectiveness(sq, 0) == 0.0
    assert eval_effectiveness(sq, 100) == 10.0


def test_satexp_value_matches_high_precision():
    mp.mp.dps = 30
    expected = float(1 - 10 * mp.exp(mp.mpf("1.1") * -1))
    got = eval_effectiveness(EffectivenessSpec.satexp(1, 10, 100), 110)
    assert got == pytest.approx(expected, rel=1e-14)
    assert got == pytest.approx(-2.3287, abs=1e-4)


def test_negative_volume_rejected():
    with pytest.raises(DomainError):
        eval_effectiveness(EffectivenessSpec.log1p(), -1.0)


def test_array_evaluation():
    x = np.array([0.0, 3.0, 8.0])
    np.testing.assert_allclose(EffectivenessSpec.log1p()(x), np.log1p(x))


def test_satexp_parameter_checks():
    with pytest.raises(DomainError):
        EffectivenessSpec("satexp", 1.0, -1.0, 100.0)
    with pytest.raises(DomainError):
        EffectivenessSpec("satexp", 1.0, 10.0, None)
    with pytest.raises(DomainError):
        EffectivenessSpec("cubic")


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(-5, 5),
    b=st.floats(0.5, 20),
    c=st.floats(20, 400),
    upper=st.floats(1, 1000),
    span=st.floats(0.01, 10),
)
def test_builtin_shapes_are_increasing_and_concave(a, b, c, upper, span):
    # satexp flattens below double precision beyond roughly 10-20 c
    for spec, top in (
        (EffectivenessSpec.sqrt(), upper),
        (EffectivenessSpec.log1p(), upper),
        (EffectivenessSpec.satexp(a, b, c), span * c),
    ):
        x = np.linspace(top / 1000, top, 1000)
        y = spec(x)
        assert np.all(np.diff(y) > 0)
        assert np.all(np.diff(y, n=2) < 0)


def test_non_concave_domain_is_rejected():
    # exp tail is flat to rounding far beyond c
    with pytest.raises(DomainError):
        ScenarioConfig.build(20, 15, 0.5, 50_000, 10, EffectivenessSpec.satexp(1, 10, 5))


# ------------------------------------------------------------------- types


def test_market_invariants():
    with pytest.raises(DomainError):
        MarketPrimitives(10, 15, 0.5)
    with pytest.raises(DomainError):
        MarketPrimitives(20, 15, 1.0)
    with pytest.raises(DomainError):
        MarketPrimitives(20, 0, 0.5)
    MarketPrimitives(20, 15, 0.0)


def test_endowment_orientation():
    assert not InformationEndowment(100, 10).mirrored
    assert InformationEndowment(10, 100).mirrored
    assert InformationEndowment(10, 10).mirrored
    assert InformationEndowment(100, 10).free_rider == 2
    assert InformationEndowment(10, 100).free_rider == 1
    with pytest.raises(DomainError):
        InformationEndowment(0, 0)
    with pytest.raises(DomainError):
        InformationEndowment(-1, 3)


def test_replace_revalidates():
    s = baseline()
    assert s.replace(gamma=0.2).gamma == 0.2
    with pytest.raises(DomainError):
        s.replace(gamma=1.0)
    with pytest.raises(TypeError):
        s.replace(v3=1)


# --------------------------------------------------------- updated quality


def test_updated_quality_examples():
    s = baseline()
    assert updated_quality(s, 1, "ml", 100, 0) == 30.0
    mp.mp.dps = 30
    assert updated_quality(s, 2, "fl", 10, 100) == pytest.approx(float(15 + mp.sqrt(110)), rel=1e-15)
    assert updated_quality(s, 2, "fl", 0, 0) == 15.0
    assert updated_quality(s, 1, "fl", 0, 0) == 20.0


def test_updated_quality_respects_endowment():
    s = baseline()
    with pytest.raises(DomainError):
        updated_quality(s, 2, "ml", 11, 0)
    with pytest.raises(DomainError):
        updated_quality(s, 1, "fl", 50, 20)
    with pytest.raises(DomainError):
        updated_quality(s, 3, "ml", 1, 1)


# ------------------------------------------------- interior condition


def test_condition_passes_at_baseline():
    rep = check_condition1(baseline(gamma=0.5))
    assert rep.part_i_ok and rep.part_ii_ok and rep.ok
    assert rep.binding_margin > 0


def _part_i_boundary_by_bisection(ratio):
    lo, hi = 1e-9, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (2 - mid * mid) / mid > ratio:
            lo = mid
        else:
            hi = mid
    return lo


def test_condition_part_i_fails_at_high_substitution():
    rep = check_condition1(baseline(gamma=0.95))
    assert not rep.part_i_ok
    assert (2 - 0.95**2) / 0.95 == pytest.approx(1.155, abs=1e-3)
    assert _part_i_boundary_by_bisection(20 / 15) == pytest.approx(0.8968, abs=1e-4)
    assert any("part (i)" in m for m in rep.messages)


def test_condition_part_i_holds_near_zero_gamma():
    s = ScenarioConfig.build(15, 15, 1e-12, 10, 10)
    assert check_condition1(s).part_i_ok
    s0 = ScenarioConfig.build(15, 15, 0.0, 10, 10)
    assert check_condition1(s0).ok
    assert math.isinf(check_condition1(s0).binding_margin)


def test_grid_contains_corner_and_near_zero_point():
    pts = condition_grid(100, 10)
    assert (100.0, 10.0) in pts
    assert (1e-6 * 10, 1e-6 * 10) in pts
    assert len(pts) == 65


def test_condition_rejects_non_positive_quality():
    s = ScenarioConfig.build(10, 8, 0.3, 100, 10, EffectivenessSpec.satexp(1, 10, 100))
    rep = check_condition1(s)
    assert not rep.qualities_ok and not rep.ok


def test_equilibrium_refuses_invalid_scenarios():
    with pytest.raises(ConditionViolation) as exc:
        equilibrium_outcome(baseline(gamma=0.95), "ml")
    assert not exc.value.report.part_i_ok


@settings(max_examples=80, deadline=None)
@given(
    g0=st.floats(0.01, 0.99),
    frac=st.floats(0.0, 1.0),
    v2=st.floats(5, 40),
    ratio=st.floats(1.0, 2.5),
    d1=st.floats(1, 300),
    d2=st.floats(1, 300),
)
def test_condition_monotone_in_gamma(g0, frac, v2, ratio, d1, d2):
    s = ScenarioConfig.build(v2 * ratio, v2, g0, d1, d2)
    if check_condition1(s).ok:
        assert check_condition1(s.replace(gamma=g0 * frac)).ok


@settings(max_examples=80, deadline=None)
@given(
    g=st.floats(0.0, 0.99),
    v1=st.floats(5, 40),
    v2=st.floats(5, 40),
    d1=st.floats(1, 300),
    d2=st.floats(1, 300),
)
def test_part_ii_symmetric_under_relabelling(g, v1, v2, d1, d2):
    for eff in (EffectivenessSpec.sqrt(), EffectivenessSpec.log1p(), EffectivenessSpec.satexp(1, 3, 80)):
        a = check_condition1_ii(v1, v2, g, d1, d2, eff)
        b = check_condition1_ii(v2, v1, g, d2, d1, eff)
        assert a == b


def test_max_valid_gamma_is_tight():
    s = baseline()
    g = max_valid_gamma(s)
    assert check_condition1(s.replace(gamma=g)).ok
    assert not check_condition1(s.replace(gamma=min(g * (1 + 1e-9), 0.999))).ok
