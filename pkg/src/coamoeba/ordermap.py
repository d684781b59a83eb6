"""The order map of the closed lopsided coamoeba.

A component of the complement of the closed lopsided coamoeba is sent to
``v(theta) = (arg(c_k z^a_k / c_0 z^a_0))_k @ B`` for any ``theta`` in it.
The image is the set of points of the translated lattice
``Arg(c) B + 2 pi Z[B]`` interior to the zonotope
``Z_B = {sum_j (pi/2) mu_j b_j : |mu_j| <= 1}``.

Exact values are carried as Fractions in units of pi throughout: a stored
``Fraction(3, 2)`` means ``3*pi/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import ceil, floor, gcd
from typing import Sequence

from .angles import EPS, Angle, as_angles, normalize_pi_units
from .errors import ModeError, NotInComplementError, UnsupportedError
from .gale import DualMatrix, dual_matrix, gale_dual
from .intlin import (
    as_int_rows,
    det_exact,
    hnf,
    lp_maximize,
    maximal_minor_gcd,
    rank_exact,
    solve_rational,
)
from .lpoly import LaurentPolynomial, support_matrix
from .torus import TorusPoint, _principal_raw, _raw_phases, classify

__all__ = [
    "OrderPoint",
    "Zonotope",
    "ComponentCount",
    "resolve_dual",
    "translation",
    "p_vector",
    "v",
    "cord",
    "zonotope",
    "zonotope_classify",
    "enumerate_orders",
    "enumerate_orders_open",
    "lattice_translates",
    "is_generic",
    "witness_theta",
    "count_components",
    "orders_report",
    "pi_rational_json",
]

INTERIOR, BOUNDARY, OUTSIDE = "interior", "boundary", "outside"


@dataclass(frozen=True)
class OrderPoint:
    """A point ``(Arg(c) + 2 pi l) B`` of ``R^m``.

    ``value`` holds Fractions (units of pi) in exact mode and floats
    (radians) otherwise. Equality and hashing use ``value`` only, since
    different ``lattice_tag`` vectors can name the same point.
    """

    value: tuple
    lattice_tag: tuple[int, ...] = field(compare=False, hash=False, default=())

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.value)

    @property
    def radians(self) -> tuple[float, ...]:
        if self.exact:
            return tuple(float(x) * math.pi for x in self.value)
        return tuple(float(x) for x in self.value)

    def __str__(self) -> str:
        if self.exact:
            return "(" + ", ".join(str(Angle(q=x)) for x in self.value) + ")"
        return str(self.value)

    def to_json(self) -> dict:
        return {"lattice_tag": list(self.lattice_tag), "value": [_coord_json(x) for x in self.value]}


def pi_rational_json(q: Fraction) -> dict:
    return {"pi_rational": str(q), "float": float(q) * math.pi}


def _coord_json(x) -> dict:
    if isinstance(x, Fraction):
        return pi_rational_json(x)
    return {"float": float(x)}


# ------------------------------------------------------------------ helpers

def resolve_dual(f: LaurentPolynomial, B=None) -> DualMatrix | None:
    """The dual matrix to use: ``B`` validated, or the canonical Gale dual.

    Returns None for a simplex (``m = 0``).
    """
    if isinstance(B, DualMatrix):
        return B
    A = support_matrix(f)
    if not A.full_dimensional:
        raise ValueError("Newton polytope is not full dimensional")
    if B is None:
        return None if A.m == 0 else gale_dual(A)
    return dual_matrix(A, B)


def _rows(B: DualMatrix | None, N: int) -> list[tuple[int, ...]]:
    return B.rows() if B is not None else [()] * N


def _require_exact(f: LaurentPolynomial, what: str) -> None:
    if not f.exact:
        raise ModeError(f"{what} needs coefficient angles that are rational multiples of pi")


def _times_B(x: Sequence, rows: list[tuple[int, ...]], m: int):
    out = []
    for j in range(m):
        acc = 0
        for xk, b in zip(x, rows):
            if b[j]:
                acc += xk * b[j]
        out.append(acc)
    return tuple(out)


def translation(f: LaurentPolynomial, B=None) -> tuple:
    """``Arg_pi(c) B`` (units of pi when exact, radians otherwise)."""
    D = resolve_dual(f, B)
    m = D.m if D is not None else 0
    if f.exact:
        return _times_B([a.q for a in f.angles], _rows(D, f.N), m)
    return _times_B([a.radians for a in f.angles], _rows(D, f.N), m)


# ------------------------------------------------------------ p and v maps

def _ratio_and_lattice(f: LaurentPolynomial, theta: Sequence[Angle], alpha_index: int):
    """Principal ratio phases and integers ``l`` with ``p^k = 2 pi l_k``."""
    if not 0 <= alpha_index < f.N:
        raise IndexError("alpha_index out of range")
    raw, exact = _raw_phases(f, theta)
    ref = raw[alpha_index]
    ratio = _principal_raw([r - ref for r in raw], exact)
    angles = [a.q if exact else a.radians for a in f.angles]
    ca = angles[alpha_index]
    lat = []
    for rk, rawk, ck in zip(ratio, raw, angles):
        # <alpha_k - alpha, theta> = (rawk - ck) - (ref - ca)
        p = rk - ck + ca - ((rawk - ck) - (ref - ca))
        if exact:
            l = p / 2
            if l.denominator != 1:
                raise AssertionError(f"p-vector entry {p}*pi is not in 2*pi*Z")
            lat.append(int(l))
        else:
            l = p / (2 * math.pi)
            li = round(l)
            if abs(l - li) > 1e-6:
                raise ValueError(f"p-vector residual {abs(l - li)} too large")
            lat.append(li)
    return ratio, tuple(lat), exact


def p_vector(f: LaurentPolynomial, theta, alpha_index: int = 0) -> tuple[int, ...]:
    """Integers ``l`` with ``p_alpha(theta) = 2 pi l`` (``theta`` taken as a lift in ``R^n``)."""
    _, lat, _ = _ratio_and_lattice(f, as_angles(theta), alpha_index)
    return lat


def v(f: LaurentPolynomial, B, theta, alpha_index: int = 0) -> OrderPoint:
    """``(arg_pi(c_k e^{i<a_k,theta>} / c_a e^{i<a,theta>}))_k @ B``."""
    D = resolve_dual(f, B)
    m = D.m if D is not None else 0
    ratio, lat, _ = _ratio_and_lattice(f, as_angles(theta), alpha_index)
    return OrderPoint(_times_B(ratio, _rows(D, f.N), m), lat)


def cord(f: LaurentPolynomial, B, theta) -> OrderPoint:
    """Order of the complement component containing ``theta``."""
    mem = classify(f, theta)
    if not mem.in_closed_complement:
        detail = " (gap within tolerance of pi)" if mem.indeterminate else ""
        raise NotInComplementError(f"theta is not in the closed lopsided complement{detail}")
    return v(f, B, theta, 0)


# --------------------------------------------------------------- zonotope

def _primitive(u: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in u:
        g = gcd(g, x)
    u = [x // g for x in u]
    s = next(x for x in u if x)
    return tuple(-x for x in u) if s < 0 else tuple(u)


def _cross(vectors: list[tuple[int, ...]], m: int) -> tuple[int, ...]:
    """Vector orthogonal to ``m - 1`` vectors in ``Z^m`` (signed maximal minors)."""
    return tuple((-1) ** i * det_exact([[v[j] for j in range(m) if j != i] for v in vectors]) for i in range(m))


@dataclass(frozen=True, eq=False)
class Zonotope:
    """``Z_B``; ``generators`` are ``b_j / 2`` in units of pi."""

    rows: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[Fraction, ...], ...]
    facet_normals: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def support(self, u: Sequence[int]) -> Fraction:
        """``h(u) = (pi/2) sum_j |<u, b_j>|`` in units of pi."""
        return Fraction(sum(abs(sum(a * b for a, b in zip(u, r))) for r in self.rows), 2)

    def bounds(self) -> tuple[Fraction, ...]:
        """Half-widths of the bounding box, units of pi."""
        return tuple(Fraction(sum(abs(r[i]) for r in self.rows), 2) for i in range(self.m))

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Vertex list, counter-clockwise for ``m = 2``; only ``m <= 2``."""
        if self.m == 1:
            h = self.bounds()[0]
            return [(-h,), (h,)]
        if self.m != 2:
            raise UnsupportedError("vertex enumeration is only available for m <= 2")
        merged: dict[tuple[int, int], list[Fraction]] = {}
        for g in self.generators:
            if not any(g):
                continue
            x, y = g
            if y < 0 or (y == 0 and x < 0):
                x, y = -x, -y
            key = _primitive((int(x * 2), int(y * 2)))
            if key[1] < 0 or (key[1] == 0 and key[0] < 0):
                key = (-key[0], -key[1])
            acc = merged.setdefault(key, [Fraction(0), Fraction(0)])
            acc[0] += x
            acc[1] += y

        def by_angle(a, b):
            c = a[0] * b[1] - a[1] * b[0]
            return -1 if c > 0 else (1 if c < 0 else 0)

        gens = sorted((tuple(v) for v in merged.values()), key=cmp_to_key(by_angle))
        start = (-sum(g[0] for g in gens), -sum(g[1] for g in gens))
        walk = [start]
        for g in gens:
            x, y = walk[-1]
            walk.append((x + 2 * g[0], y + 2 * g[1]))
        return walk + [(-x, -y) for x, y in walk[1:-1]]

    def to_json(self) -> dict:
        return {
            "generators": [[pi_rational_json(x) for x in g] for g in self.generators],
            "facet_normals": [list(u) for u in self.facet_normals],
        }


def zonotope(B) -> Zonotope:
    """Build ``Z_B`` with its facet normals (``m - 1`` subsets of rows)."""
    rows = [tuple(r) for r in (B.rows() if isinstance(B, DualMatrix) else as_int_rows(B))]
    m = len(rows[0]) if rows else 0
    if m and rank_exact(rows) != m:
        raise ValueError("B must have full column rank")
    gens = tuple(tuple(Fraction(x, 2) for x in r) for r in rows)
    if m == 0:
        normals: tuple = ()
    elif m == 1:
        normals = ((1,),)
    else:
        seen = []
        nonzero = sorted({_primitive(r) for r in rows if any(r)})
        for sub in combinations(nonzero, m - 1):
            u = _cross(list(sub), m)
            if any(u):
                u = _primitive(u)
                if u not in seen:
                    seen.append(u)
        normals = tuple(sorted(seen))
    return Zonotope(tuple(rows), gens, normals)


def _as_pi_units(p) -> tuple:
    if isinstance(p, OrderPoint):
        return p.value
    out = []
    for x in p:
        if isinstance(x, Angle):
            out.append(x.q if x.exact else x.radians / math.pi)
        elif isinstance(x, float):
            out.append(x / math.pi)
        else:
            out.append(Fraction(x))
    return tuple(out)


def zonotope_classify(Z: Zonotope, p) -> tuple[str, bool | None]:
    """``(position, is_vertex)`` of ``p`` relative to ``Z``.

    ``p`` is in units of pi (Fractions or an ``OrderPoint``; Angles and
    radians floats are converted). ``is_vertex`` is None for ``m >= 3``.
    """
    q = _as_pi_units(p)
    if len(q) != Z.m:
        raise ValueError("point has the wrong dimension")
    if Z.m == 0:
        return INTERIOR, False
    exact = all(isinstance(x, Fraction) for x in q)
    tol = 0 if exact else EPS
    pos = INTERIOR
    for u in Z.facet_normals:
        s = abs(sum(a * b for a, b in zip(u, q)))
        h = Z.support(u)
        if s > h + tol:
            return OUTSIDE, False
        if s >= h - tol:
            pos = BOUNDARY
    if Z.m > 2:
        return pos, None
    if pos != BOUNDARY:
        return pos, False
    if exact:
        return pos, q in {tuple(v) for v in Z.vertices()}
    return pos, any(max(abs(float(a) - float(b)) for a, b in zip(q, v)) <= EPS for v in Z.vertices())


# ------------------------------------------------------------- enumeration

def lattice_translates(f: LaurentPolynomial, B=None) -> list[tuple[OrderPoint, str, bool | None]]:
    """All points of ``Arg(c) B + 2 pi Z[B]`` inside the closed zonotope.

    Each entry is ``(point, position, is_vertex)``, lexicographically sorted.
    """
    _require_exact(f, "exact enumeration")
    D = resolve_dual(f, B)
    if D is None:
        return [(OrderPoint((), (0,) * f.N), INTERIOR, False)]
    Z = zonotope(D)
    m = D.m
    rows = D.rows()
    t = _times_B([a.q for a in f.angles], rows, m)
    H, U = hnf(rows)
    H = [[int(x) for x in r] for r in H[:m]]
    U = [[int(x) for x in r] for r in U[:m]]
    R = Z.bounds()
    found = []

    def rec(i: int, base: list[Fraction], k: list[int]):
        if i == m:
            q = tuple(base)
            pos, vert = zonotope_classify(Z, q)
            if pos != OUTSIDE:
                tag = tuple(sum(k[r] * U[r][c] for r in range(m)) for c in range(f.N))
                found.append((OrderPoint(q, tag), pos, vert))
            return
        step = 2 * H[i][i]
        lo = ceil((-R[i] - base[i]) / step)
        hi = floor((R[i] - base[i]) / step)
        for ki in range(lo, hi + 1):
            nb = [x + 2 * ki * h for x, h in zip(base, H[i])]
            rec(i + 1, nb, k + [ki])

    rec(0, list(t), [])
    found.sort(key=lambda e: e[0].value)
    return found


def enumerate_orders(f: LaurentPolynomial, B=None) -> list[OrderPoint]:
    """Interior lattice translates: the image of the order map, sorted."""
    return [p for p, pos, _ in lattice_translates(f, B) if pos == INTERIOR]


def enumerate_orders_open(f: LaurentPolynomial, B=None) -> list[OrderPoint]:
    """Translates in the closed zonotope that are not vertices (``m <= 2``)."""
    D = resolve_dual(f, B)
    if D is not None and D.m > 2:
        raise UnsupportedError("open-variant enumeration needs m <= 2")
    return [p for p, pos, vert in lattice_translates(f, D) if pos == INTERIOR or not vert]


def is_generic(f: LaurentPolynomial, B=None) -> bool:
    """True when no lattice translate lies on the zonotope boundary."""
    return all(pos == INTERIOR for _, pos, _ in lattice_translates(f, B))


# ---------------------------------------------------------------- witness

def _lattice_tag_for(f: LaurentPolynomial, D: DualMatrix | None, q: tuple) -> list[int]:
    """Integer ``l`` with ``(Arg(c) + 2 l) B = q`` (units of pi)."""
    if D is None:
        return [0] * f.N
    m = D.m
    rows = D.rows()
    t = _times_B([a.q for a in f.angles], rows, m)
    H, U = hnf(rows)
    target = [(x - y) / 2 for x, y in zip(q, t)]
    k = []
    for i in range(m):
        piv = Fraction(int(H[i][i]))
        ki = target[i] / piv
        if ki.denominator != 1:
            raise ValueError("point is not in the translated lattice")
        k.append(int(ki))
        target = [x - ki * int(h) for x, h in zip(target, H[i])]
    if any(target):
        raise ValueError("point is not in the translated lattice")
    return [sum(k[r] * int(U[r][c]) for r in range(m)) for c in range(f.N)]


def _chebyshev_lambda(A: list[list[int]], lam0: list[Fraction], rows=None) -> list[Fraction]:
    """Minimize ``max |lam_k|`` over ``lam0 + u A`` with an exact simplex.

    The affine space ``lam0 + u A`` is ``{lam : lam B = lam0 B}``; for one
    column ``b`` the minimizer is ``sign(b_k) (lam0 . b) / sum |b_j|``.
    """
    s0 = max((abs(x) for x in lam0), default=Fraction(0))
    if s0 == 0:
        return lam0
    if rows is not None and len(rows[0]) == 1:
        b = [r[0] for r in rows]
        c = sum(x * y for x, y in zip(lam0, b))
        total = sum(abs(y) for y in b)
        return [Fraction(c * ((y > 0) - (y < 0)), total) for y in b]
    d = len(A)
    N = len(lam0)
    # variables: u+ (d), u- (d), t; maximize t (s = s0 - t)
    rows, rhs = [], []
    for k in range(N):
        col = [A[i][k] for i in range(d)]
        rows.append(col + [-x for x in col] + [1])
        rhs.append(s0 - lam0[k])
        rows.append([-x for x in col] + col + [1])
        rhs.append(s0 + lam0[k])
    rows.append([0] * (2 * d) + [1])
    rhs.append(s0)
    _, x = lp_maximize([0] * (2 * d) + [1], rows, rhs)
    u = [x[i] - x[d + i] for i in range(d)]
    return [lam0[k] + sum(u[i] * A[i][k] for i in range(d)) for k in range(N)]


def witness_theta(f: LaurentPolynomial, B, p) -> TorusPoint:
    """A point of the complement component with order ``p``.

    Picks ``lambda`` with ``(pi/2) lambda B = p`` minimizing ``max |lambda_k|``
    (exact LP), then solves ``Arg(c) + 2 pi l - (pi/2) lambda = y A`` for
    ``y`` and returns ``theta = -y[1:]``. All phases of ``f`` at ``theta``
    then sit inside the open half-plane centred at ``y[0]``.
    """
    _require_exact(f, "witness construction")
    D = resolve_dual(f, B)
    m = D.m if D is not None else 0
    q = _as_pi_units(p)
    if len(q) != m or not all(isinstance(x, Fraction) for x in q):
        raise ValueError("p must be an exact point of R^m")
    A = support_matrix(f).tolist()
    l = _lattice_tag_for(f, D, q)
    if D is not None:
        rows = D.rows()
        Bt = [[rows[k][j] for k in range(f.N)] for j in range(m)]
        lam0 = solve_rational(Bt, [2 * x for x in q])
        if lam0 is None:
            raise ValueError("p is not in the span of the zonotope")
    else:
        lam0 = [Fraction(0)] * f.N
    lam = _chebyshev_lambda(A, lam0, D.rows() if D is not None else None)
    if max(abs(x) for x in lam) >= 1:
        raise ValueError("p is not interior to the zonotope")
    w = [a.q + 2 * lk - x / 2 for a, lk, x in zip(f.angles, l, lam)]
    At = [[A[i][k] for i in range(len(A))] for k in range(f.N)]
    y = solve_rational(At, w)
    if y is None:
        raise AssertionError("phase system has no solution; dual matrix inconsistent with A")
    theta = tuple(Angle(q=normalize_pi_units(-x)) for x in y[1:])
    if cord(f, D, theta).value != q:
        raise AssertionError("witness does not reproduce the requested order")
    return theta


# ------------------------------------------------------------------ counts

@dataclass(frozen=True)
class ComponentCount:
    count: int
    bijective: bool
    g_A: int
    g_B: int
    is_gale: bool


def count_components(f: LaurentPolynomial, B=None) -> ComponentCount:
    """Number of order points; ``bijective`` when ``g_A = 1`` and ``B`` is a Gale dual.

    When not bijective the order map is ``g_A``-to-one onto its image, so the
    component count is ``g_A`` times the order count.
    """
    D = resolve_dual(f, B)
    A = support_matrix(f)
    g_A = maximal_minor_gcd(A.matrix, A.n + 1)
    if D is None:
        return ComponentCount(1, g_A == 1, g_A, 1, True)
    g_B = maximal_minor_gcd(D.B, D.m)
    n_orders = len(enumerate_orders(f, D))
    return ComponentCount(n_orders, g_A == 1 and D.is_gale, g_A, g_B, D.is_gale)


SCHEMA_VERSION = "1"


def orders_report(f: LaurentPolynomial, B=None, open_variant: bool = False, witnesses: bool = False) -> dict:
    """JSON-ready summary of the order map (see ``ORDERS_SCHEMA``)."""
    D = resolve_dual(f, B)
    orders = enumerate_orders_open(f, D) if open_variant else enumerate_orders(f, D)
    cc = count_components(f, D)
    if D is not None:
        Z = zonotope(D)
        zj = Z.to_json()
        zj["bounds"] = [pi_rational_json(x) for x in Z.bounds()]
        t = translation(f, D)
    else:
        zj = {"generators": [], "facet_normals": [], "bounds": []}
        t = ()
    out = {
        "schema_version": SCHEMA_VERSION,
        "polynomial": str(f),
        "B": D.tolist() if D is not None else [],
        "zonotope": zj,
        "translation": [pi_rational_json(x) for x in t],
        "orders": [o.to_json() for o in orders],
        "count": len(orders),
        "g_A": cc.g_A,
        "g_B": cc.g_B,
        "bijective": cc.bijective,
        "open_variant": open_variant,
    }
    if witnesses:
        for entry, o in zip(out["orders"], orders):
            if open_variant and D is not None and zonotope_classify(zonotope(D), o)[0] != INTERIOR:
                entry["witness"] = None
                continue
            th = witness_theta(f, D, o)
            entry["witness"] = [pi_rational_json(a.q) for a in th]
            entry["roundtrip"] = cord(f, D, th) == o
    return out


ORDERS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "coamoeba orders",
    "type": "object",
    "required": ["schema_version", "B", "zonotope", "translation", "orders", "count", "g_A", "g_B", "bijective"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "polynomial": {"type": "string"},
        "B": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "zonotope": {
            "type": "object",
            "properties": {
                "generators": {"type": "array"},
                "facet_normals": {"type": "array"},
                "bounds": {"type": "array"},
            },
        },
        "translation": {"type": "array", "items": {"$ref": "#/$defs/pi_value"}},
        "orders": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["lattice_tag", "value"],
                "properties": {
                    "lattice_tag": {"type": "array", "items": {"type": "integer"}},
                    "value": {"type": "array", "items": {"$ref": "#/$defs/pi_value"}},
                },
            },
        },
        "count": {"type": "integer"},
        "g_A": {"type": "integer"},
        "g_B": {"type": "integer"},
        "bijective": {"type": "boolean"},
    },
    "$defs": {
        "pi_value": {
            "type": "object",
            "required": ["float"],
            "properties": {"pi_rational": {"type": "string"}, "float": {"type": "number"}},
        }
    },
}
