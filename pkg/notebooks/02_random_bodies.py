"""
Method agreement on random convex bodies
========================================

Random strictly convex bodies are built from a positive support function.
The Minkowski, Cauchy and projective formulas should agree with the direct
arclength integral to near machine precision.
"""

# %%
import time

import numpy as np

from croftonlab import perimeter, random_convex_body
from croftonlab.perimeter import applicable_methods, minkowski_perimeter

rng = np.random.default_rng(0)

# %%
for k in (-1.0, 0.0, 1.0):
    t0 = time.perf_counter()
    spreads = []
    for _ in range(20):
        body = random_convex_body(rng, k)
        vals = [perimeter(k, body, m).value for m in applicable_methods(k, body)]
        spreads.append((max(vals) - min(vals)) / min(vals))
    print(f"k={k:+g}: max relative spread {max(spreads):.1e} in {time.perf_counter() - t0:.2f} s")

# %% The Minkowski value does not depend on where the origin sits, even outside the body
body = random_convex_body(rng, -1.0)
for origin in ([0, 0], [0.6, 0.0], [-0.3, 0.7]):
    print(origin, minkowski_perimeter(-1.0, body, origin=np.array(origin, float)).value)
