"""
Five intervals on the circle
============================

For a univariate trinomial the torus is a circle and the complement of the
lopsided set is a union of arcs. ``1 + z^3 + i z^5`` has five of them, one
for each lattice translate inside ``[-5 pi, 5 pi]``.
"""
from fractions import Fraction

import numpy as np

from coamoeba import parse_polynomial
from coamoeba.angles import Angle
from coamoeba.circuits import base_points
from coamoeba.ordermap import cord, enumerate_orders, zonotope, resolve_dual
from coamoeba.render import pixel_centers, raster_coamoeba_sampled, raster_lopsided, torus_components

f = parse_polynomial("1 + z1^3 + i*z1^5", 1)
Z = zonotope(resolve_dual(f))
print("B =", resolve_dual(f).tolist(), " zonotope half-width:", Z.bounds()[0], "pi")
print("orders:", [str(p) for p in enumerate_orders(f)])

# Walk the circle and print each arc with the order of its midpoint.
# Pixel i of W sits at (2i + 1 - W) pi / W, so the midpoints are exact.
W = 720
free = ~raster_lopsided(f, W).layers["closed_cover"][0]
print("arcs:", torus_components(free))
shift = int(np.argmin(free))
runs, start = [], None
for k in range(W + 1):
    i = (shift + k) % W
    if free[i] and start is None:
        start = k
    elif not free[i] and start is not None:
        runs.append((shift + start, shift + k - 1))
        start = None
for a, b in runs:
    mid = ((a + b) // 2) % W
    t = Angle(q=Fraction(2 * mid + 1 - W, W))
    lo, hi = pixel_centers(W)[a % W] / np.pi, pixel_centers(W)[b % W] / np.pi
    print(f"  [{lo:+.3f}, {hi:+.3f}] pi  order {cord(f, None, t)}")

# The roots themselves give the coamoeba: five arguments, all in the lopsided set.
print("root arguments / pi:", np.round(np.array(raster_coamoeba_sampled(f).info["arguments"]) / np.pi, 4))

bp = base_points(f)
for th, p in zip(bp, bp.orders):
    print("base point", th[0], "->", p)
