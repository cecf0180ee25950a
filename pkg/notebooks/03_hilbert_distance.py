"""
Hilbert distance and its discrete Cauchy form
=============================================

On a polygon domain the Hilbert distance splits into one projective
pseudometric per vertex.  On the unit disk it is the Klein model distance.
"""

# %%
import numpy as np

from croftonlab import HilbertDomain, discrete_cauchy_distance, hilbert_distance, hyperbolic_distance_klein
from croftonlab.verify import random_interior, random_polygon_domain

rng = np.random.default_rng(1)

# %%
square = HilbertDomain.square()
p, q = np.array([0.0, 0.0]), np.array([0.5, 0.0])
print("square  ", hilbert_distance(square, p, q), "half log 3 =", 0.5 * np.log(3))
print("discrete", discrete_cauchy_distance(square, p, q))
print("one side", discrete_cauchy_distance(square, p, q, one_sided=1),
      discrete_cauchy_distance(square, p, q, one_sided=-1))

# %% Random polygons
worst = 0.0
for _ in range(50):
    dom = random_polygon_domain(rng)
    a, b = random_interior(rng, dom, 2)
    worst = max(worst, abs(discrete_cauchy_distance(dom, a, b) - hilbert_distance(dom, a, b)))
print("max vertex-sum deviation", worst)

# %% Unit disk against the Klein formula, close to the boundary
disk = HilbertDomain.unit_disk()
r = np.array([0.9, 0.99, 0.999, 0.9999])
pts = np.stack([r, np.zeros_like(r)], axis=-1)
print(hilbert_distance(disk, -pts * 0.5, pts) - hyperbolic_distance_klein(-pts * 0.5, pts))
