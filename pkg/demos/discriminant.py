"""
A coamoeba that covers the torus
================================

The pentagon ``(0,0), (2,0), (0,3), (1,3), (2,2)`` has normalized volume 11.
The reduced discriminant below is a polynomial in two variables whose
coamoeba, sampled fiber by fiber, fills the whole torus.
"""
import time
from pathlib import Path

from coamoeba import parse_polynomial
from coamoeba.gale import gale_dual, normalized_volume
from coamoeba.render import raster_coamoeba_sampled, write_ppm

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

pentagon = [(0, 0), (2, 0), (0, 3), (1, 3), (2, 2)]
A = [[1] * 5] + [list(c) for c in zip(*pentagon)]
print("Gale dual:", gale_dual(A).tolist())
print("normalized volume:", normalized_volume(A))

D = parse_polynomial(
    "729*z1^2 + 2187*z1^3 + 2187*z1^4 + 729*z1^5 + 1728*z2 + 4752*z1*z2 + 5400*z1^2*z2"
    " - 1404*z1^3*z2 - 864*z1^4*z2 + 3456*z2^2 - 5616*z1*z2^2 + 576*z1^2*z2^2"
    " + 256*z1^3*z2^2 + 1728*z2^3",
    2,
)
t0 = time.perf_counter()
img = raster_coamoeba_sampled(D, 300)
print(f"coverage {img.coverage:.5f} in {time.perf_counter() - t0:.1f}s")
print("z2 sweep:", img.info["z2_sweep"])
write_ppm(img, out / "discriminant.ppm", layers=())
print("wrote", out / "discriminant.ppm")
