"""
Perimeter of geodesic circles
=============================

Every perimeter method should return 2 pi ell(rho) for a circle of intrinsic
radius rho.  Run with ``python notebooks/01_circle_benchmarks.py``.
"""

# %%
import math

import numpy as np

from croftonlab import TrigCurve, perimeter
from croftonlab.perimeter import applicable_methods
from croftonlab.curvature import ell, tan_k

# %% The chart radius of a centred circle is tan_k(rho) in all three regimes
for k in (-1.0, 0.0, 1.0):
    print(f"k = {k:+g}")
    for rho in (0.25, 0.5, 1.0):
        body = TrigCurve.circle((0, 0), float(tan_k(k, rho)))
        exact = 2 * math.pi * ell(k, rho)
        row = {m: perimeter(k, body, m).value for m in applicable_methods(k, body)}
        worst = max(abs(v / exact - 1) for v in row.values())
        print(f"  rho={rho:<5} exact={exact:.12f}  methods={len(row)}  worst rel err={worst:.1e}")

# %% An off-centre circle keeps its length but breaks the polar method
body = TrigCurve.circle((0.5, 0.2), 0.2)
print(applicable_methods(-1.0, body))
vals = np.array([perimeter(-1.0, body, m).value for m in applicable_methods(-1.0, body)])
print("spread", vals.max() - vals.min())
