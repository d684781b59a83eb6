"""Dual matrices, circuits and normalized volumes of point configurations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .intlin import (
    LatticeBasis,
    as_int_rows,
    det_exact,
    integer_kernel_basis,
    lattice_from_rows,
    rank_exact,
    to_object_array,
)
from .errors import UnsupportedError
from .lpoly import LaurentPolynomial, PointConfiguration, support_matrix

__all__ = [
    "DualMatrix",
    "dual_matrix",
    "gale_dual",
    "is_circuit",
    "circuit_minors",
    "circuit_dual",
    "normalized_volume",
    "shoelace_volume",
    "UnsupportedError",
]


def _config(A) -> PointConfiguration:
    if isinstance(A, PointConfiguration):
        return A
    if isinstance(A, LaurentPolynomial):
        return support_matrix(A)
    rows = as_int_rows(A)
    if any(x != 1 for x in rows[0]):
        raise ValueError("first row of a point configuration must be all ones")
    return PointConfiguration(to_object_array(rows), len(rows) - 1, len(rows[0]))


@dataclass(frozen=True, eq=False)
class DualMatrix:
    """An integer ``N x m`` matrix ``B`` of full rank with ``A B = 0``."""

    B: np.ndarray
    is_gale: bool
    row_lattice: LatticeBasis = field(repr=False)

    @property
    def N(self) -> int:
        return self.B.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in r) for r in self.B]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows()]


def dual_matrix(A, B) -> DualMatrix:
    """Validate a user-supplied dual matrix ``B`` for ``A``."""
    A = _config(A)
    b = as_int_rows(B)
    if len(b) != A.N:
        raise ValueError(f"B must have {A.N} rows")
    m = len(b[0]) if b else 0
    a = A.tolist()
    for i in range(A.n + 1):
        for j in range(m):
            if sum(a[i][k] * b[k][j] for k in range(A.N)) != 0:
                raise ValueError("A @ B is not zero")
    if m and rank_exact(b) != m:
        raise ValueError("B is not of full column rank")
    if m != A.N - A.rank:
        raise ValueError(f"B must have {A.N - A.rank} columns")
    lat = lattice_from_rows(b)
    return DualMatrix(to_object_array(b, m), lat.is_whole if m else True, lat)


def gale_dual(A) -> DualMatrix:
    """Canonical Gale dual: a Z-basis of the integer kernel of ``A``.

    The basis is pinned by :func:`coamoeba.intlin.integer_kernel_basis`
    (last nonzero entry of every column is a positive pivot).
    """
    A = _config(A)
    if not A.full_dimensional:
        raise ValueError("point configuration is not full dimensional")
    if A.m < 1:
        raise ValueError("codimension m = 0: a simplex has no Gale dual")
    K = integer_kernel_basis(A.matrix)
    lat = lattice_from_rows(K)
    return DualMatrix(K, lat.is_whole, lat)


def circuit_minors(A) -> list[int]:
    """``det(A_hat_j)`` for ``j = 0..N-1`` (column ``j`` removed)."""
    A = _config(A)
    a = A.tolist()
    if A.N != A.n + 2:
        raise ValueError("circuit minors need N = n + 2")
    return [det_exact([[r[k] for k in range(A.N) if k != j] for r in a]) for j in range(A.N)]


def is_circuit(A) -> bool:
    """Codimension one with every maximal minor nonzero."""
    A = _config(A)
    if A.N != A.n + 2:
        return False
    return all(d != 0 for d in circuit_minors(A))


def circuit_dual(A) -> DualMatrix:
    """``B = (det A_hat_0, -det A_hat_1, ..., (-1)^(n+1) det A_hat_(n+1))^t``."""
    A = _config(A)
    if not is_circuit(A):
        raise ValueError("point configuration is not a circuit")
    b = [(-1) ** j * d for j, d in enumerate(circuit_minors(A))]
    B = to_object_array([[x] for x in b], 1)
    a = A.tolist()
    assert all(sum(r[k] * b[k] for k in range(A.N)) == 0 for r in a)
    lat = lattice_from_rows(B)
    g = 0
    for x in b:
        g = gcd(g, x)
    return DualMatrix(B, g == 1, lat)


def _hull_2d(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def shoelace_volume(points: list[tuple[int, int]]) -> Fraction:
    """``2 * area`` of the convex hull of integer points in the plane."""
    hull = _hull_2d(points)
    twice = 0
    for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
        twice += x0 * y1 - x1 * y0
    return Fraction(abs(twice))


def normalized_volume(A) -> Fraction:
    """``n! Vol(Conv A)``.

    Circuits use half the sum of absolute maximal minors; otherwise only
    ``n <= 2`` is supported (lattice length for ``n = 1``, hull shoelace for
    ``n = 2``).
    """
    A = _config(A)
    if not A.full_dimensional:
        raise ValueError("point configuration is not full dimensional")
    if A.N == A.n + 1:
        return Fraction(abs(det_exact(A.tolist())))
    if is_circuit(A):
        return Fraction(sum(abs(d) for d in circuit_minors(A)), 2)
    cols = [A.column(k)[1:] for k in range(A.N)]
    if A.n == 1:
        xs = [c[0] for c in cols]
        return Fraction(max(xs) - min(xs))
    if A.n == 2:
        return shoelace_volume(cols)
    raise UnsupportedError("normalized volume for n >= 3 is only available for circuits and simplices")

