"""
Support frames and boundary measures
====================================

Along the boundary of a hyperbolic body we tabulate polar data (rho, theta,
alpha), support data (r, x, omega) and the ideal end points phi, phi~ of
each support line, then check the closed-form measure ratios against
finite differences.
"""

# %%
import math

import numpy as np

from croftonlab import TrigCurve
from croftonlab.frames import tangent_frames
from croftonlab.perimeter import kappa_from_omega, measure_oracles, measure_ratios
from croftonlab.quadrature import central_diff
from croftonlab.body import wrap_angle

k = -1.0
body = TrigCurve.ellipse((0.15, -0.05), (0.55, 0.3), 0.4)
t = 2 * math.pi * np.arange(8) / 8

# %%
fr = tangent_frames(body, k, t, arclength=True)
for i in range(len(t)):
    print(f"s={fr.s[i]:.4f} rho={fr.rho[i]:.4f} r={fr.r[i]:+.4f} x={fr.x[i]:+.4f} "
          f"omega={fr.omega[i]:+.4f} phi={fr.phi[i]:+.4f} kappa={fr.kappa_g[i]:.4f}")

# %% Curvature recovered from d omega / ds
h = 1e-4 * 2 * math.pi
dom = central_diff(lambda u: fr.omega + wrap_angle(tangent_frames(body, k, u).omega - fr.omega), t, h)
print("kappa gap", np.max(np.abs(kappa_from_omega(k, fr, dom / fr.speed) - fr.kappa_g)))

# %% Closed-form ratios against central differences
m = measure_ratios(k, body, t)
for name, val in measure_oracles(k, body, t).items():
    print(f"{name:18s} {np.max(np.abs(getattr(m, name) - val)):.1e}")
print("Poincare form gap", np.max(np.abs(m.dphi_dtheta - m.dphi_dtheta_poincare)))
