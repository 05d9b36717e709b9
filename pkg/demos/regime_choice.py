"""
When do the firms pool their data?
==================================

Pooling helps the firm with less data (the free rider) but also hands its
rival a better product. The firm with more data joins only while the
products are weak substitutes. This script walks through that decision and
the thresholds that separate the two outcomes.
"""
import numpy as np

from flcompete import (
    EffectivenessSpec,
    ScenarioConfig,
    decide_regime,
    solve_d2_star,
    threshold_report,
)

s = ScenarioConfig.build(20.0, 15.0, 0.5, 100.0, 10.0, EffectivenessSpec.sqrt())

###############################################################################
# The decision at two substitution levels
# ---------------------------------------

for g in (0.05, 0.5):
    dec = decide_regime(s.replace(gamma=g))
    print(f"gamma={g}: chosen={dec.chosen.value}  delta1={dec.delta1:+.4f}  delta2={dec.delta2:+.4f}")
    print(f"   gain ratio {dec.ratio:.4f} vs competition bound {dec.bound:.4f}")

###############################################################################
# Thresholds
# ----------
# Below gamma* both firms gain from pooling. Below gamma-hat the free rider
# could still pay its rival enough to make pooling worthwhile for both.

rep = threshold_report(s)
print(f"\ngamma*    = {rep.gamma_star:.6f}")
print(f"gamma-hat = {rep.gamma_hat:.6f}")
print(f"valid up to gamma = {rep.gamma_max:.6f}")
print(f"at gamma = 0.5 the free rider needs D2 > {rep.d2_star:.4f} to pool")

###############################################################################
# Endowment threshold across substitution levels
# ----------------------------------------------

for g in np.linspace(0.1, 0.7, 4):
    print(f"gamma={g:.2f}  D2* = {solve_d2_star(EffectivenessSpec.log1p(), 100.0, g):8.3f}  (log1p)")
