"""Rasters of lopsided and sampled coamoebas, overlays and image files.

Pixel ``(row j, column i)`` of a ``W x H`` raster is the point
``theta = (-pi + (i + 1/2) 2pi/W, -pi + (j + 1/2) 2pi/H)``; for ``n = 1``
the raster is a single row. Row 0 is written at the bottom of image files
so that ``theta_2`` increases upwards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import ndimage

from .angles import EPS
from .lpoly import LaurentPolynomial
from .ordermap import INTERIOR, lattice_translates, resolve_dual, zonotope
from .torus import shell

__all__ = [
    "UnivariatePoly",
    "RasterImage",
    "ConvergenceError",
    "aberth_roots",
    "aberth_batch",
    "pixel_centers",
    "raster_lopsided",
    "raster_coamoeba_sampled",
    "torus_components",
    "complement_component_count",
    "draw_overlays",
    "zonotope_svg",
    "write_ppm",
    "write_svg",
]

TWO_PI = 2.0 * math.pi


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residuals):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True)
class UnivariatePoly:
    """``sum_k coeffs[k] z^k`` with complex float coefficients."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)


def _initial_guesses(a: np.ndarray) -> np.ndarray:
    """Points on a perturbed circle whose radius follows the coefficient sizes."""
    K, d1 = a.shape
    d = d1 - 1
    mags = np.abs(a)
    lead = mags[:, -1:]
    k = np.arange(d)
    with np.errstate(divide="ignore"):
        ratios = np.where(mags[:, :-1] > 0, (mags[:, :-1] / lead) ** (1.0 / (d - k)), 0.0)
    radius = np.maximum(ratios.max(axis=1), 1e-3)
    phase = TWO_PI * k / d + 0.4 + 0.05 * np.sin(3.0 * k + 1.0)
    return radius[:, None] * np.exp(1j * phase)[None, :]


def aberth_batch(coeffs, tol: float = 1e-12, max_iter: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Roots of many polynomials of one degree at once.

    ``coeffs`` has shape ``(K, d + 1)`` in ascending powers with nonzero
    leading entries. Returns ``(roots, residual)`` where ``residual`` is the
    worst relative backward error ``|p(z)| / sum_k |a_k| |z|^k`` per row.
    """
    a = np.asarray(coeffs, dtype=complex)
    if a.ndim != 2 or a.shape[1] < 2:
        raise ValueError("need a (K, d+1) coefficient array with d >= 1")
    if np.any(a[:, -1] == 0):
        raise ValueError("leading coefficient vanishes")
    a = a / a[:, -1:]
    K, d1 = a.shape
    d = d1 - 1
    if d == 1:
        z = -a[:, :1]
        return z, np.zeros(K)
    da = a[:, 1:] * np.arange(1, d1)
    z = _initial_guesses(a)
    active = np.ones(K, dtype=bool)
    absa = np.abs(a)

    def horner(c, x):
        acc = np.broadcast_to(c[:, -1:], x.shape).copy()
        for j in range(c.shape[1] - 2, -1, -1):
            acc = acc * x + c[:, j : j + 1]
        return acc

    def residual(zs, ca, cabs):
        num = np.abs(horner(ca, zs))
        den = horner(cabs.astype(complex), np.abs(zs).astype(complex)).real
        return (num / np.maximum(den, 1e-300)).max(axis=1)

    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zs, ca, cd = z[idx], a[idx], da[idx]
        p = horner(ca, zs)
        dp = horner(cd, zs)
        diff = zs[:, :, None] - zs[:, None, :]
        np.einsum("kii->ki", diff)[...] = 1.0
        inv = 1.0 / diff
        np.einsum("kii->ki", inv)[...] = 0.0
        s = inv.sum(axis=2)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p / dp
            step = w / (1.0 - w * s)
        step = np.where(np.isfinite(step), step, 0.0)
        zs = zs - step
        z[idx] = zs
        small = np.abs(step).max(axis=1) <= 1e-15 * np.maximum(np.abs(zs).max(axis=1), 1.0)
        done = small | (residual(zs, ca, absa[idx]) <= tol)
        active[idx[done]] = False
    res = residual(z, a, absa)
    return z, res


def aberth_roots(p: UnivariatePoly | Sequence[complex], tol: float = 1e-12, max_iter: int = 100) -> np.ndarray:
    """All complex roots of ``p`` (repeated roots come back as a tight cluster).

    Raises :class:`ConvergenceError` carrying the residuals when the backward
    error stays above ``sqrt(tol)`` after ``max_iter`` sweeps.
    """
    if not isinstance(p, UnivariatePoly):
        p = UnivariatePoly(tuple(p))
    if p.degree < 1:
        raise ValueError("degree must be at least one")
    c = np.array(p.coeffs)
    # zero roots are exact; peel them off first
    nz = int(np.argmax(c != 0))
    roots, res = aberth_batch(c[nz:][None, :], tol, max_iter) if p.degree - nz >= 1 else (np.zeros((1, 0)), np.zeros(1))
    if res[0] > math.sqrt(tol):
        raise ConvergenceError(f"Aberth iteration stalled at residual {res[0]:.3g}", res)
    return np.concatenate([np.zeros(nz, dtype=complex), roots[0]])


# ------------------------------------------------------------------ rasters

@dataclass
class RasterImage:
    """A boolean mask over the fundamental domain plus named overlay layers."""

    mask: np.ndarray
    layers: dict[str, np.ndarray] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    @property
    def coverage(self) -> float:
        return float(self.mask.mean())

    def theta(self, row: int, col: int) -> tuple[float, ...]:
        t1 = -math.pi + (col + 0.5) * TWO_PI / self.width
        if self.height == 1:
            return (t1,)
        return (t1, -math.pi + (row + 0.5) * TWO_PI / self.height)


def pixel_centers(count: int) -> np.ndarray:
    return -math.pi + (np.arange(count) + 0.5) * (TWO_PI / count)


def _phase_arrays(f: LaurentPolynomial) -> tuple[np.ndarray, np.ndarray]:
    E = np.array(f.exponents, dtype=float)
    ang = np.array([a.radians for a in f.angles])
    return E, ang


def _gaps(f: LaurentPolynomial, thetas: np.ndarray) -> np.ndarray:
    """Largest circular gap of the phase list at each row of ``thetas``."""
    E, ang = _phase_arrays(f)
    ph = np.mod(thetas @ E.T + ang + math.pi, TWO_PI)
    ph.sort(axis=1)
    inner = np.diff(ph, axis=1).max(axis=1) if ph.shape[1] > 1 else np.zeros(len(ph))
    wrap = TWO_PI - (ph[:, -1] - ph[:, 0])
    return np.maximum(inner, wrap)


def _grid(f: LaurentPolynomial, resolution: int) -> tuple[np.ndarray, tuple[int, int]]:
    if f.n == 1:
        return pixel_centers(resolution)[:, None], (1, resolution)
    if f.n == 2:
        t = pixel_centers(resolution)
        T1, T2 = np.meshgrid(t, t)
        return np.column_stack([T1.ravel(), T2.ravel()]), (resolution, resolution)
    raise ValueError("rasters need n <= 2")


def _gap_lipschitz(f: LaurentPolynomial) -> float:
    """Bound on how fast the gap moves per unit of ``max |d theta_i|``."""
    E = f.exponents
    return float(max(sum(abs(a - b) for a, b in zip(e, g)) for e in E for g in E))


def raster_lopsided(f: LaurentPolynomial, resolution: int = 400) -> RasterImage:
    """Per-pixel membership in the lopsided coamoeba (float gap test).

    ``mask`` tests pixel centres for the lopsided coamoeba and the
    ``closed`` layer for its closure ``{gap <= pi}``. The ``closed_cover``
    layer marks every pixel the closure might meet, using a Lipschitz bound
    on the gap, so that lower-dimensional pieces of the closure still
    separate the complement. For ``n = 1`` the image is a one-row strip.
    """
    pts, shape = _grid(f, resolution)
    gap = _gaps(f, pts)
    mask = (gap < math.pi - EPS).reshape(shape)
    closed = (gap <= math.pi + EPS).reshape(shape)
    slack = _gap_lipschitz(f) * math.pi / resolution
    cover = (gap <= math.pi + slack + EPS).reshape(shape)
    return RasterImage(mask, {"closed": closed, "closed_cover": cover}, {"kind": "lopsided", "n": f.n})


def _z2_coefficients(f: LaurentPolynomial) -> tuple[list[list[tuple[int, complex]]], int]:
    """Group terms by the power of ``z_2`` (shifted to start at zero)."""
    lo = min(e[1] for e in f.exponents)
    hi = max(e[1] for e in f.exponents)
    groups: list[list[tuple[int, complex]]] = [[] for _ in range(hi - lo + 1)]
    for e, c in f.terms:
        groups[e[1] - lo].append((e[0], c.value))
    return groups, hi - lo


def _mark(mask: np.ndarray, phi: np.ndarray, psi: np.ndarray) -> None:
    H, W = mask.shape
    i = np.floor((phi + math.pi) / TWO_PI * W).astype(np.int64) % W
    j = np.floor((psi + math.pi) / TWO_PI * H).astype(np.int64) % H
    mask[j, i] = True


class _FiberSolver:
    """Roots in ``z_2`` of ``f(e^{x + i phi}, z_2)`` for arrays of ``(x, phi)``."""

    def __init__(self, f: LaurentPolynomial):
        self.groups, self.deg = _z2_coefficients(f)
        self.degenerate = 0
        self.solved = 0
        self.max_residual = 0.0

    def __call__(self, x: np.ndarray, phi: np.ndarray) -> np.ndarray:
        """Root arguments, shape ``(len(x), deg)``; NaN rows mark skipped fibers."""
        logz1 = x + 1j * phi
        coeffs = np.zeros((x.size, self.deg + 1), dtype=complex)
        for k, g in enumerate(self.groups):
            for e1, c in g:
                coeffs[:, k] += c * np.exp(e1 * logz1)
        # a leading coefficient that cancels to rounding level is degenerate
        lead_size = sum(abs(c) * np.exp(e1 * x) for e1, c in self.groups[-1])
        bad = np.abs(coeffs[:, -1]) <= 1e-12 * lead_size
        out = np.full((x.size, self.deg), np.nan)
        keep = ~bad
        if keep.any():
            c = coeffs[keep] / np.abs(coeffs[keep]).max(axis=1, keepdims=True)
            roots, res = aberth_batch(c)
            out[keep] = np.where(np.abs(roots) > 0, np.angle(roots), np.nan)
            self.max_residual = max(self.max_residual, float(res.max()))
        self.degenerate += int(bad.sum())
        self.solved += int(x.size)
        return out


def _arg_hausdorff(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Circular Hausdorff distance between rows of two argument arrays."""
    d = np.abs(np.remainder(a[:, :, None] - b[:, None, :] + math.pi, TWO_PI) - math.pi)
    h = np.maximum(d.min(axis=2).max(axis=1), d.min(axis=1).max(axis=1))
    return np.where(np.isnan(h), 0.0, h)


def _sample_fibers(f: LaurentPolynomial, resolution: int, fiber_samples: int, xs: np.ndarray, mask: np.ndarray,
                   swap: bool, max_degenerate: float, max_depth: int = 24) -> dict:
    """Sweep fibers and refine each ``x``-interval until its endpoints' root
    arguments agree to within a pixel, so fast-turning roots leave no gaps."""
    if swap:
        f = LaurentPolynomial(tuple(((e[1], e[0]), c) for e, c in f.terms), 2)
    solve = _FiberSolver(f)
    if solve.deg < 1:
        return {"fibers": 0, "degenerate": 0}
    phis = -math.pi + (np.arange(fiber_samples) + 0.5) * (TWO_PI / fiber_samples)
    X, P = np.meshgrid(xs, phis)
    args = solve(X.ravel(), P.ravel()).reshape(fiber_samples, len(xs), solve.deg)

    def mark(phi, psi):
        ok = ~np.isnan(psi)
        phi_b = np.broadcast_to(phi[:, None], psi.shape)
        if swap:
            _mark(mask, psi[ok], phi_b[ok])
        else:
            _mark(mask, phi_b[ok], psi[ok])

    mark(P.ravel(), args.reshape(-1, solve.deg))
    tol = 0.9 * TWO_PI / resolution
    x0, x1 = X[:, :-1].ravel(), X[:, 1:].ravel()
    ph = P[:, :-1].ravel()
    a0 = args[:, :-1].reshape(-1, solve.deg)
    a1 = args[:, 1:].reshape(-1, solve.deg)
    for _ in range(max_depth):
        need = _arg_hausdorff(a0, a1) > tol
        if not need.any():
            break
        x0, x1, ph, a0, a1 = x0[need], x1[need], ph[need], a0[need], a1[need]
        xm = 0.5 * (x0 + x1)
        am = solve(xm, ph)
        mark(ph, am)
        x0, x1 = np.concatenate([x0, xm]), np.concatenate([xm, x1])
        ph = np.concatenate([ph, ph])
        a0, a1 = np.concatenate([a0, am]), np.concatenate([am, a1])
    if solve.degenerate > max_degenerate * solve.solved:
        raise ValueError(f"{solve.degenerate} of {solve.solved} fibers are degenerate in the solved variable")
    return {"fibers": solve.solved, "degenerate": solve.degenerate, "max_residual": solve.max_residual}


def raster_coamoeba_sampled(
    f: LaurentPolynomial,
    resolution: int = 300,
    fiber_samples: int | None = None,
    modulus_range: tuple[float, float] = (-12.0, 12.0),
    modulus_samples: int = 400,
    both_axes: bool = True,
    max_degenerate: float = 0.01,
) -> RasterImage:
    """Mark ``Arg`` of sampled points of ``V(f)``.

    For ``n = 2``, ``z_1 = e^{x + i phi}`` sweeps ``fiber_samples`` angles
    and ``modulus_samples`` log-moduli in ``modulus_range`` (sinh-spaced so
    that both the bulk and the tentacles are sampled), refined adaptively
    wherever a root argument moves by more than a pixel; the roots in
    ``z_2`` mark pixels. ``both_axes`` repeats the sweep with the variables
    swapped. Fibers where the leading coefficient vanishes are skipped and
    counted; more than ``max_degenerate`` of them is an error. For ``n = 1``
    the roots' arguments are returned in ``info["arguments"]`` and marked on
    a strip.
    """
    if f.n == 1:
        lo = min(e[0] for e in f.exponents)
        c = np.zeros(max(e[0] for e in f.exponents) - lo + 1, dtype=complex)
        for e, coef in f.terms:
            c[e[0] - lo] = coef.value
        roots = aberth_roots(UnivariatePoly(tuple(c)))
        args = sorted(float(np.angle(r)) for r in roots if r != 0)
        mask = np.zeros((1, resolution), dtype=bool)
        _mark(mask, np.array(args), np.zeros(len(args)))
        return RasterImage(mask, {}, {"kind": "sampled", "n": 1, "arguments": args})
    if f.n != 2:
        raise ValueError("sampled coamoebas need n <= 2")
    fiber_samples = fiber_samples or resolution
    lo, hi = modulus_range
    u = np.linspace(-1.0, 1.0, modulus_samples)
    xs = (lo + hi) / 2 + (hi - lo) / 2 * np.sinh(3.0 * u) / math.sinh(3.0)
    mask = np.zeros((resolution, resolution), dtype=bool)
    info = {"kind": "sampled", "n": 2}
    info["z2_sweep"] = _sample_fibers(f, resolution, fiber_samples, xs, mask, False, max_degenerate)
    if both_axes:
        info["z1_sweep"] = _sample_fibers(f, resolution, fiber_samples, xs, mask, True, max_degenerate)
    if not info["z2_sweep"]["fibers"] and not info.get("z1_sweep", {}).get("fibers"):
        raise ValueError("polynomial is constant in both variables")
    return RasterImage(mask, {}, info)


# ----------------------------------------------------------------- topology

def torus_components(mask: np.ndarray) -> int:
    """Connected components of ``mask`` with 4-adjacency and wraparound."""
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim == 1:
        mask = mask[None, :]
    structure = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])
    labels, count = ndimage.label(mask, structure=structure)
    if count == 0:
        return 0
    parent = list(range(count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a: np.ndarray, b: np.ndarray):
        both = (a > 0) & (b > 0)
        for x, y in zip(a[both], b[both]):
            rx, ry = find(int(x)), find(int(y))
            if rx != ry:
                parent[rx] = ry

    join(labels[:, 0], labels[:, -1])
    if labels.shape[0] > 1:
        join(labels[0, :], labels[-1, :])
    return len({find(k) for k in range(1, count + 1)})


def complement_component_count(f: LaurentPolynomial, resolution: int = 400) -> int:
    """Components of the complement of the closed lopsided coamoeba, from a raster."""
    img = raster_lopsided(f, resolution)
    return torus_components(~img.layers["closed_cover"])


# ----------------------------------------------------------------- overlays

def draw_overlays(img: RasterImage, f: LaurentPolynomial, width: float = 0.75) -> RasterImage:
    """Add a ``shell`` layer: pixels within ``width`` pixels of a shell hyperplane."""
    H, W = img.mask.shape
    pts, _ = _grid(f, W)
    if f.n == 2 and H != W:
        raise ValueError("overlays need a square raster")
    layer = np.zeros(len(pts), dtype=bool)
    step = TWO_PI / W
    for fam in shell(f):
        nrm = np.array(fam.normal, dtype=float)
        val = pts @ nrm - fam.offset.radians
        dist = np.abs(np.remainder(val + math.pi, TWO_PI) - math.pi)
        layer |= dist <= width * step * max(np.linalg.norm(nrm), 1.0)
    layers = dict(img.layers)
    layers["shell"] = layer.reshape(img.mask.shape)
    return RasterImage(img.mask, layers, dict(img.info))


def _fmt(x: Fraction) -> str:
    return f"{float(x):.6g}"


def zonotope_svg(f: LaurentPolynomial, B=None, size: int = 400) -> str:
    """Vector drawing of ``Z_B`` (units of pi) with its translated lattice points.

    Interior points are filled, boundary non-vertex points hollow and
    vertex points crossed out.
    """
    D = resolve_dual(f, B)
    if D is None or D.m > 2:
        raise ValueError("zonotope drawing needs m = 1 or m = 2")
    Z = zonotope(D)
    pts = lattice_translates(f, D)
    R = [float(r) for r in Z.bounds()]
    pad = 0.08 * size
    span = size - 2 * pad
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']

    def xy(p):
        x = pad + (float(p[0]) + R[0]) / (2 * R[0]) * span
        if Z.m == 1:
            return x, size / 2
        y = pad + (R[1] - float(p[1])) / (2 * R[1]) * span
        return x, y

    if Z.m == 1:
        (x0, y0), (x1, _) = xy((-R[0],)), xy((R[0],))
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" stroke="black" stroke-width="2"/>')
        for v in Z.vertices():
            x, y = xy(v)
            out.append(f'<line x1="{x:.2f}" y1="{y - 8:.2f}" x2="{x:.2f}" y2="{y + 8:.2f}" stroke="black" stroke-width="2"/>')
            out.append(f'<text x="{x:.2f}" y="{y + 24:.2f}" font-size="12" text-anchor="middle">{_fmt(v[0])}&#960;</text>')
    else:
        poly = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(xy, Z.vertices()))
        out.append(f'<polygon points="{poly}" fill="#e8eef8" stroke="black" stroke-width="1.5"/>')
    for p, pos, vert in pts:
        x, y = xy(p.value)
        label = ", ".join(_fmt(c) for c in p.value)
        if pos == INTERIOR:
            out.append(f'<circle class="interior" cx="{x:.2f}" cy="{y:.2f}" r="5" fill="#c0392b"><title>({label})&#960;</title></circle>')
        elif vert:
            out.append(f'<g class="vertex"><line x1="{x - 5:.2f}" y1="{y - 5:.2f}" x2="{x + 5:.2f}" y2="{y + 5:.2f}" stroke="#555"/>'
                       f'<line x1="{x - 5:.2f}" y1="{y + 5:.2f}" x2="{x + 5:.2f}" y2="{y - 5:.2f}" stroke="#555"/></g>')
        else:
            out.append(f'<circle class="boundary" cx="{x:.2f}" cy="{y:.2f}" r="5" fill="none" stroke="#c0392b" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- files

PALETTE = {
    "background": (255, 255, 255),
    "mask": (40, 40, 40),
    "closed": (150, 150, 150),
    "shell": (200, 40, 40),
}


def write_ppm(img: RasterImage, path: str | Path, layers: Sequence[str] = ("closed",)) -> Path:
    """Binary P6 pixmap; layers in ``layers`` are painted under the mask, ``shell`` above it."""
    H, W = img.mask.shape
    rgb = np.empty((H, W, 3), dtype=np.uint8)
    rgb[:] = PALETTE["background"]
    for name in layers:
        if name in img.layers and name != "shell":
            rgb[img.layers[name]] = PALETTE.get(name, (120, 120, 120))
    rgb[img.mask] = PALETTE["mask"]
    if "shell" in layers and "shell" in img.layers:
        rgb[img.layers["shell"]] = PALETTE["shell"]
    path = Path(path)
    with path.open("wb") as fh:
        fh.write(f"P6\n{W} {H}\n255\n".encode("ascii"))
        fh.write(rgb[::-1].tobytes())
    return path


def write_svg(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path
