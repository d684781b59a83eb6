"""
Counting with the open zonotope
===============================

With two relations among five exponents the zonotope is a polygon. Lattice
translates on its edges (but not at corners) still name components of the
closed complement, so the open count can exceed the normalized volume.
"""
from pathlib import Path

from coamoeba import parse_polynomial, support_matrix
from coamoeba.gale import normalized_volume
from coamoeba.ordermap import enumerate_orders, enumerate_orders_open, lattice_translates, resolve_dual, zonotope
from coamoeba.render import write_svg, zonotope_svg

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

f = parse_polynomial("1 + z1 + z2 + z1^2*z2 - z1^3", 2)
D = resolve_dual(f)
Z = zonotope(D)
print("B =", D.tolist())
print("vertices (pi):", [tuple(str(c) for c in v) for v in Z.vertices()])

for p, pos, vertex in lattice_translates(f):
    print(f"  {p}  {pos}{'  vertex' if vertex else ''}")

print("interior orders:", len(enumerate_orders(f)))
print("open count:", len(enumerate_orders_open(f)))
print("normalized volume:", normalized_volume(support_matrix(f)))

write_svg(zonotope_svg(f), out / "zonogon.svg")
print("wrote", out / "zonogon.svg")
