"""
Hilbert perimeters and the Crofton measure of lines
===================================================

The perimeter of a body inside a Hilbert domain is half the integral of
cot psi1 - cot psi2 over boundary points of the domain.  It is compared with
an inscribed-polygon oracle, and segment lengths are estimated by counting
random line crossings.
"""

# %%
import numpy as np

from croftonlab import HilbertDomain, Polygon, TrigCurve, cauchy_perimeter_hilbert, hilbert_perimeter_oracle
from croftonlab.hilbert import crofton_length_mc, hilbert_distance, oriented_distance_mc

# %%
domains = {"square": HilbertDomain.square(),
           "ellipse": HilbertDomain(TrigCurve.ellipse((0.0, 0.0), (1.0, 0.6), 0.3))}
bodies = {"circle": TrigCurve.circle((0.05, 0.0), 0.3),
          "triangle": Polygon([[-0.3, -0.2], [0.35, -0.15], [0.1, 0.3]])}
for dn, dom in domains.items():
    for bn, body in bodies.items():
        exact = cauchy_perimeter_hilbert(dom, body).value
        oracle = [hilbert_perimeter_oracle(dom, body, n) for n in (64, 512, 4096)]
        print(f"{dn:8s} {bn:9s} {exact:.10f}", "oracle", ["%.10f" % v for v in oracle])

# %% Crossing counts
disk = HilbertDomain.unit_disk()
p, q = np.array([0.0, 0.0]), np.array([0.5, 0.0])
res = crofton_length_mc(disk, np.stack([p, q]), 10**6, seed=0)
print("MC", res.estimate, "+/-", res.std_error, " exact", hilbert_distance(disk, p, q))
half = oriented_distance_mc(disk, p, q, 10**6, seed=0)
print("oriented lines", half.estimate, "vs h/2 =", hilbert_distance(disk, p, q) / 2)
