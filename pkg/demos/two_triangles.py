"""
Two complement components from a four-term polynomial
=====================================================

``z1^3 + z2 + z2^2 - z1*z2`` has a circuit support with normalized volume 3,
but its coefficients are not generic: one lattice translate lands on a
vertex of the zonotope, so only two components survive.
"""
from pathlib import Path

from coamoeba import parse_polynomial
from coamoeba.angles import Angle
from coamoeba.circuits import base_points
from coamoeba.ordermap import enumerate_orders, lattice_translates, translation, v, witness_theta
from coamoeba.render import complement_component_count, draw_overlays, raster_lopsided, write_ppm

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

f = parse_polynomial("z1^3 + z2 + z2^2 - z1*z2", 2)
print("f =", f)

# The translate Arg(c) B and where every translate falls.
print("translation:", [str(x) for x in translation(f)], "(units of pi)")
for p, pos, vertex in lattice_translates(f):
    print(f"  {p}  {pos}{'  vertex' if vertex else ''}")

orders = enumerate_orders(f)
print("orders:", [str(p) for p in orders])

# Two points on either side of the lopsided set, measured from the second term.
for th in [(Angle.pi(-2, 3), Angle.pi(0)), (Angle.pi(2, 3), Angle.pi(0))]:
    print("v at", [str(t) for t in th], "=", v(f, None, th, 1))

# A witness per order, and the binomial system that should have given three.
for p in orders:
    print("witness for", p, "->", [str(t) for t in witness_theta(f, None, p)])
bp = base_points(f)
print(f"base points: {len(bp)} accepted, {len(bp.rejected)} rejected (expected {bp.expected})")

img = draw_overlays(raster_lopsided(f, 400), f)
print("raster components:", complement_component_count(f, 400))
write_ppm(img, out / "two_triangles.ppm", layers=("closed", "shell"))
print("wrote", out / "two_triangles.ppm")
