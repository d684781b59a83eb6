"""Circuits: component counts, maximal sparseness and base points.

For a circuit the integer relation among the exponents is unique up to
scale; its sign pattern splits the terms into two classes. Forcing every
term within a class to share one phase gives a binomial system on the
torus whose ``n! Vol`` solutions land one in each complement component.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .angles import Angle
from .errors import MultiplicityWarning, NonGenericError
from .gale import _config, circuit_dual, is_circuit, normalized_volume
from .intlin import det_exact, maximal_minor_gcd, snf
from .lpoly import LaurentPolynomial, newton_vertices, support_matrix
from .ordermap import OrderPoint, cord, is_generic
from .torus import TorusPoint, classify

__all__ = [
    "BinomialSystem",
    "BasePoints",
    "circuit_count",
    "is_maximally_sparse",
    "binomial_system",
    "base_points",
]


def circuit_count(A) -> int:
    """``n! Vol`` of a circuit: half the sum of absolute maximal minors.

    Warns with :class:`MultiplicityWarning` when the maximal minors share a
    factor, since the count of components then carries a multiplicity.
    """
    A = _config(A)
    if not is_circuit(A):
        raise ValueError("point configuration is not a circuit")
    g = maximal_minor_gcd(A.matrix, A.n + 1)
    if g != 1:
        warnings.warn(f"g_A = {g}: order points correspond to {g} components each", MultiplicityWarning, stacklevel=2)
    return int(normalized_volume(A))


def is_maximally_sparse(A) -> bool:
    """Every exponent is a vertex of the Newton polytope."""
    if isinstance(A, LaurentPolynomial):
        f = A
    else:
        A = _config(A)
        exps = [A.column(k)[1:] for k in range(A.N)]
        f = LaurentPolynomial.from_terms(exps, [1] * A.N, A.n)
    return len(newton_vertices(f)) == f.N


@dataclass(frozen=True)
class BinomialSystem:
    """``<M_i, theta> = psi_i (mod 2 pi)`` for each row ``M_i`` of ``exponent_matrix``.

    ``classes`` holds the two groups of term indices whose phases are forced
    to agree.
    """

    exponent_matrix: tuple[tuple[int, ...], ...]
    rhs_angles: tuple[Angle, ...]
    classes: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def n(self) -> int:
        return len(self.exponent_matrix)

    @property
    def det(self) -> int:
        return det_exact(self.exponent_matrix) if self.n else 1

    def solutions(self) -> list[TorusPoint]:
        """All ``|det M|`` solutions on the torus, in residue order."""
        if self.det == 0:
            raise ValueError("singular binomial system")
        S, U, V = snf(self.exponent_matrix)
        n = self.n
        d = [int(S[i][i]) for i in range(n)]
        Upsi = [sum((self.rhs_angles[j] * int(U[i][j]) for j in range(n)), Angle.pi(0)) for i in range(n)]
        out = []
        for r in product(*(range(x) for x in d)):
            eta = [(Upsi[i] + Angle.pi(2 * r[i])) * Fraction(1, d[i]) for i in range(n)]
            theta = tuple(
                sum((eta[i] * int(V[j][i]) for i in range(n) if V[j][i]), Angle.pi(0)).principal()
                for j in range(n)
            )
            out.append(theta)
        return out


def binomial_system(f: LaurentPolynomial) -> BinomialSystem:
    """Phase-alignment system of a circuit, split by the signs of its dual."""
    A = support_matrix(f)
    if not is_circuit(A):
        raise ValueError("support is not a circuit")
    b = [int(r[0]) for r in circuit_dual(A).B]
    pos = tuple(k for k in range(f.N) if b[k] > 0)
    neg = tuple(k for k in range(f.N) if b[k] < 0)
    # the smaller class first; a class of size two is a single binomial
    classes = (pos, neg) if len(pos) <= len(neg) else (neg, pos)
    exps, angs = f.exponents, f.angles
    rows, rhs = [], []
    for G in classes:
        for k in G[1:]:
            rows.append(tuple(a - c for a, c in zip(exps[k], exps[G[0]])))
            rhs.append((angs[G[0]] - angs[k]).principal())
    return BinomialSystem(tuple(rows), tuple(rhs), classes)


@dataclass(frozen=True)
class BasePoints:
    """Solutions of the phase-alignment system, sorted into accepted and rejected.

    ``rejected`` holds solutions whose phase list is not lopsided (the two
    classes point in opposite directions), which happens only for
    degenerate coefficients.
    """

    points: tuple[TorusPoint, ...]
    orders: tuple[OrderPoint, ...]
    rejected: tuple[TorusPoint, ...]
    expected: int
    system: BinomialSystem
    generic: bool | None

    @property
    def complete(self) -> bool:
        return (
            not self.rejected
            and len(self.points) == self.expected
            and len(set(self.orders)) == len(self.orders)
        )

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def base_points(f: LaurentPolynomial, strict: bool = False) -> BasePoints:
    """One point in each complement component of a circuit with generic coefficients.

    With ``strict=True`` anything short of a complete set (rejected points,
    repeated orders) raises :class:`NonGenericError`; otherwise the result
    reports it.
    """
    A = support_matrix(f)
    if not A.full_dimensional:
        raise ValueError("Newton polytope is not full dimensional")
    expected = circuit_count(A)
    system = binomial_system(f)
    points, orders, rejected = [], [], []
    for theta in system.solutions():
        if classify(f, theta).in_closed_complement:
            points.append(theta)
            orders.append(cord(f, None, theta))
        else:
            rejected.append(theta)
    generic = is_generic(f) if f.exact else None
    out = BasePoints(tuple(points), tuple(orders), tuple(rejected), expected, system, generic)
    if strict and not out.complete:
        raise NonGenericError(
            f"{len(rejected)} solution(s) rejected as not lopsided, "
            f"{len(set(orders))} distinct orders for {expected} components"
        )
    return out
