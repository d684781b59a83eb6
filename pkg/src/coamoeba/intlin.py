"""Exact integer and rational linear algebra.

Matrices are accepted as anything convertible to a list of rows of Python
integers (nested lists, tuples, numpy arrays) and returned as numpy arrays
with ``dtype=object`` so that entries stay arbitrary-precision ints.

Hermite normal form convention, used everywhere in the package: row style,
zeros below each pivot, pivots positive, entries above a pivot reduced into
``[0, pivot)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

import numpy as np

__all__ = [
    "LatticeBasis",
    "as_int_rows",
    "to_object_array",
    "det_exact",
    "det_cofactor",
    "hnf",
    "snf",
    "integer_kernel_basis",
    "maximal_minor_gcd",
    "minors",
    "lattice_from_rows",
    "rank_exact",
    "solve_rational",
    "inverse_rational",
    "fourier_motzkin_feasible",
    "lp_maximize",
]


def as_int_rows(M) -> list[list[int]]:
    """Copy ``M`` into a list of lists of Python ints (rejects non-integers)."""
    rows = []
    for row in np.asarray(M, dtype=object).tolist() if not isinstance(M, list) else M:
        out = []
        for x in row:
            if isinstance(x, (bool, np.bool_)):
                raise TypeError("boolean entries are not integers")
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                x = x.numerator
            elif isinstance(x, (float, np.floating)):
                if x != int(x):
                    raise ValueError(f"non-integer entry {x}")
            out.append(int(x))
        rows.append(out)
    return rows


def to_object_array(rows: Sequence[Sequence[int]], ncols: int | None = None) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        return np.empty((0, ncols or 0), dtype=object)
    arr = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        arr[i, :] = r
    return arr


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det_exact(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = as_int_rows(M)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("det_exact needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_cofactor(M) -> int:
    """Laplace expansion along the first row; slow, used as an oracle."""
    a = as_int_rows(M)
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in a[1:]]
        total += (-1) ** j * a[0][j] * det_cofactor(sub)
    return total


def _hnf_rows(a: list[list[int]], track: bool = True):
    """In-place row HNF of ``a``; returns (a, U, pivot_columns)."""
    m = len(a)
    ncols = len(a[0]) if m else 0
    U = _identity(m) if track else None
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        # gcd-combine everything below row r into row r
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _xgcd(x, y)
            # [[s, t], [-y/g, x/g]] has determinant 1
            yg, xg = y // g, x // g
            ar, ai = a[r], a[i]
            a[r] = [s * p + t * q for p, q in zip(ar, ai)]
            a[i] = [-yg * p + xg * q for p, q in zip(ar, ai)]
            if track:
                ur, ui = U[r], U[i]
                U[r] = [s * p + t * q for p, q in zip(ur, ui)]
                U[i] = [-yg * p + xg * q for p, q in zip(ur, ui)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if track:
                U[r] = [-x for x in U[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if track:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return a, U, pivots


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(M) -> tuple[np.ndarray, np.ndarray]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ M`` and ``U`` unimodular. Zero rows of
    ``H`` sit at the bottom.
    """
    a = as_int_rows(M)
    ncols = len(a[0]) if a else 0
    H, U, _ = _hnf_rows(a)
    return to_object_array(H, ncols), to_object_array(U, len(a))


def rank_exact(M) -> int:
    a = as_int_rows(M)
    if not a or not a[0]:
        return 0
    _, _, piv = _hnf_rows(a, track=False)
    return len(piv)


def snf(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``S = U @ M @ V`` with ``d_1 | d_2 | ...``, all ``d_i >= 0``."""
    a = as_int_rows(M)
    m = len(a)
    n = len(a[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_combine(i, j, s, t, u, v):
        # rows (i, j) <- (s*ri + t*rj, u*ri + v*rj)
        ri, rj = a[i], a[j]
        a[i] = [s * x + t * y for x, y in zip(ri, rj)]
        a[j] = [u * x + v * y for x, y in zip(ri, rj)]
        ri, rj = U[i], U[j]
        U[i] = [s * x + t * y for x, y in zip(ri, rj)]
        U[j] = [u * x + v * y for x, y in zip(ri, rj)]

    def col_combine(i, j, s, t, u, v):
        for mat in (a, V):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = s * x + t * y
                row[j] = u * x + v * y

    for k in range(min(m, n)):
        # pick the smallest nonzero entry in the trailing block as pivot
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        while True:
            for i in range(k + 1, m):
                if a[i][k]:
                    x, y = a[k][k], a[i][k]
                    if y % x == 0:
                        row_combine(k, i, 1, 0, -(y // x), 1)
                        continue
                    g, s, t = _xgcd(x, y)
                    row_combine(k, i, s, t, -(y // g), x // g)
            for j in range(k + 1, n):
                if a[k][j]:
                    x, y = a[k][k], a[k][j]
                    if y % x == 0:
                        col_combine(k, j, 1, 0, -(y // x), 1)
                        continue
                    g, s, t = _xgcd(x, y)
                    col_combine(k, j, s, t, -(y // g), x // g)
            if any(a[i][k] for i in range(k + 1, m)):
                continue
            # divisibility: fold an offending row into row k and go again
            p = a[k][k]
            bad = next((i for i in range(k + 1, m) for j in range(k + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            row_combine(k, bad, 1, 1, 0, 1)
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            U[k] = [-x for x in U[k]]
    return to_object_array(a, n), to_object_array(U, m), to_object_array(V, n)


def integer_kernel_basis(A) -> np.ndarray:
    """Columns form a Z-basis of ``{v in Z^N : A v = 0}``; shape ``N x m``.

    The basis is canonical: it is the row HNF of the kernel lattice computed
    with the coordinate order reversed, so that the last nonzero entry of each
    column is its (positive) pivot. For a one-dimensional kernel this pins the
    sign so that the last nonzero entry is positive.
    """
    a = as_int_rows(A)
    N = len(a[0]) if a else 0
    At = [[a[i][k] for i in range(len(a))] for k in range(N)]
    H, U, piv = _hnf_rows(At)
    r = len(piv)
    kernel = [U[i] for i in range(r, N)]
    if not kernel:
        return np.empty((N, 0), dtype=object)
    rev = [list(reversed(v)) for v in kernel]
    Hk, _, _ = _hnf_rows(rev, track=False)
    cols = [list(reversed(v)) for v in Hk if any(v)]
    return to_object_array([[c[i] for c in cols] for i in range(N)], len(cols))


def minors(M, k: int) -> list[int]:
    """All ``k x k`` minors (row subsets x column subsets, lexicographic)."""
    a = as_int_rows(M)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if k > min(rows, cols):
        raise ValueError(f"minor size {k} exceeds matrix shape {rows}x{cols}")
    out = []
    for R in combinations(range(rows), k):
        for C in combinations(range(cols), k):
            out.append(det_exact([[a[i][j] for j in C] for i in R]))
    return out


def maximal_minor_gcd(M, k: int | None = None) -> int:
    """gcd of the absolute values of all ``k x k`` minors (0 iff all vanish).

    ``k`` defaults to ``min(rows, cols)``. Use ``k = n + 1`` for ``g_A`` and
    ``k = m`` for ``g_B``.
    """
    a = as_int_rows(M)
    if k is None:
        k = min(len(a), len(a[0]) if a else 0)
    g = 0
    for d in minors(a, k):
        g = gcd(g, d)
    return g


@dataclass(frozen=True)
class LatticeBasis:
    """Sublattice of ``Z^dim`` given by a canonical row-HNF basis."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    @property
    def index(self) -> int | None:
        """``[Z^dim : L]`` for full-rank lattices, ``None`` otherwise."""
        if not self.is_full_rank:
            return None
        idx = 1
        for i, row in enumerate(self.basis):
            idx *= row[i]
        return idx

    @property
    def is_whole(self) -> bool:
        return self.index == 1

    def coordinates(self, v: Sequence[Fraction | int]) -> tuple[Fraction, ...] | None:
        """Solve ``k @ basis = v``; return ``k`` (rational) or None if ``v`` is off the span."""
        k = []
        rest = [Fraction(x) for x in v]
        for row in self.basis:
            c = next(j for j, x in enumerate(row) if x)
            coef = rest[c] / row[c]
            k.append(coef)
            rest = [x - coef * y for x, y in zip(rest, row)]
        if any(rest):
            return None
        return tuple(k)

    def contains(self, v: Sequence[Fraction | int]) -> bool:
        k = self.coordinates(v)
        return k is not None and all(x.denominator == 1 for x in k)


def lattice_from_rows(B) -> LatticeBasis:
    """The lattice ``Z[B]`` spanned by the rows of ``B``."""
    a = as_int_rows(B)
    dim = len(a[0]) if a else 0
    if dim == 0:
        return LatticeBasis(0, ())
    H, _, piv = _hnf_rows(a, track=False)
    return LatticeBasis(dim, tuple(tuple(r) for r in H[: len(piv)]))


def solve_rational(M, b: Sequence) -> list[Fraction] | None:
    """One solution ``x`` of ``M x = b`` over Q (free variables set to 0), or None."""
    rows = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(np.asarray(M, dtype=object).tolist(), b)]
    m = len(rows)
    n = len(rows[0]) - 1 if m else 0
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    if any(rows[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = rows[i][n]
    return x


def _rank_rational(a: list[list[Fraction]]) -> int:
    rows = [list(r) for r in a]
    r = 0
    for c in range(len(rows[0]) if rows else 0):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def inverse_rational(M) -> list[list[Fraction]]:
    a = [[Fraction(x) for x in r] for r in np.asarray(M, dtype=object).tolist()]
    n = len(a)
    if any(len(r) != n for r in a) or _rank_rational(a) < n:
        raise ZeroDivisionError("matrix is singular")
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        x = solve_rational(a, e)
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _normalized_constraint(a: list[Fraction], b: Fraction):
    lead = next((abs(x) for x in a if x != 0), None)
    if lead is None:
        return tuple(a), b
    return tuple(x / lead for x in a), b / lead


def fourier_motzkin_feasible(A_ub, b_ub) -> bool:
    """Decide whether ``{y in Q^d : A_ub y <= b_ub}`` is nonempty, exactly.

    Plain Fourier-Motzkin elimination with duplicate-row pruning; meant for
    small ``d`` (the Newton-polytope vertex test uses ``d = n``).
    """
    cons: dict[tuple, Fraction] = {}
    for a, b in zip(A_ub, b_ub):
        lhs, rhs = _normalized_constraint([Fraction(x) for x in a], Fraction(b))
        if lhs not in cons or rhs < cons[lhs]:
            cons[lhs] = rhs
    d = len(next(iter(cons))) if cons else 0
    for j in range(d):
        pos, neg, new = [], [], {}
        for lhs, rhs in cons.items():
            if lhs[j] > 0:
                pos.append((lhs, rhs))
            elif lhs[j] < 0:
                neg.append((lhs, rhs))
            else:
                new[lhs] = min(rhs, new.get(lhs, rhs))
        for lp, rp in pos:
            for ln, rn in neg:
                sp, sn = 1 / lp[j], -1 / ln[j]
                lhs = [x * sp + y * sn for x, y in zip(lp, ln)]
                lhs[j] = Fraction(0)
                lhs, rhs = _normalized_constraint(lhs, rp * sp + rn * sn)
                if lhs not in new or rhs < new[lhs]:
                    new[lhs] = rhs
        cons = new
        for lhs, rhs in cons.items():
            if not any(lhs) and rhs < 0:
                return False
    return all(rhs >= 0 for rhs in cons.values())


def lp_maximize(c, A_ub, b_ub) -> tuple[Fraction, list[Fraction]]:
    """Exact simplex for ``max c.x`` s.t. ``A_ub x <= b_ub``, ``x >= 0``.

    Requires ``b_ub >= 0`` so the origin is a feasible start. Bland's rule
    makes the result deterministic and cycle-free. Raises ``ValueError`` if
    the problem is unbounded.
    """
    c = [Fraction(x) for x in c]
    rows = [[Fraction(x) for x in r] for r in A_ub]
    b = [Fraction(x) for x in b_ub]
    if any(x < 0 for x in b):
        raise ValueError("lp_maximize needs b_ub >= 0")
    m, n = len(rows), len(c)
    # tableau rows: [A | I | b]; objective row holds reduced costs
    T = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    obj = [-x for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ValueError("linear program is unbounded")
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[r])]
        basis[r] = enter
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return obj[-1], x
