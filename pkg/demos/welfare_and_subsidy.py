"""
Consumers, welfare and side payments
====================================

Pooled training raises both qualities, so consumers are better off whenever
it happens. When the data-rich firm refuses, a transfer from the free rider
can sometimes change its mind. This script tabulates both effects along the
substitution axis.
"""
import numpy as np

from flcompete import EffectivenessSpec, ScenarioConfig, subsidy_report, welfare_report
from flcompete.analysis import subsidy_surplus

s = ScenarioConfig.build(20.0, 15.0, 0.3, 50.0, 10.0, EffectivenessSpec.log1p())

###############################################################################
# Welfare table
# -------------

print(" gamma   CS_ml    CS_fl    SW_ml    SW_fl   all-win")
for g in np.linspace(0.05, 0.75, 8):
    w = welfare_report(s.replace(gamma=float(g)))
    print(f"{g:6.2f} {w.cs_ml:8.2f} {w.cs_fl:8.2f} {w.sw_ml:8.2f} {w.sw_fl:8.2f}   {w.all_win}")

###############################################################################
# Side payments
# -------------
# The joint gain shrinks as competition stiffens. Once it turns negative no
# transfer can rescue the federation.

print("\n gamma  joint gain  feasible  transfer")
for g in np.linspace(0.25, 0.8, 8):
    sc = s.replace(gamma=float(g))
    try:
        rep = subsidy_report(sc)
    except ValueError as exc:
        print(f"{g:6.2f}  out of range ({type(exc).__name__})")
        continue
    print(f"{g:6.2f} {subsidy_surplus(sc):10.4f}  {rep.feasible!s:8} {rep.min_transfer:9.4f}")
