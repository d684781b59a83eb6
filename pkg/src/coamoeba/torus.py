"""Phase lists, lopsidedness tests and the shell arrangement on the torus.

Every predicate works in two modes. If the coefficient angles of ``f`` and
the point ``theta`` are all exact rational multiples of pi, comparisons are
exact. Otherwise angles are floats and the critical comparison
``gap == pi`` is made with tolerance :data:`EPS`; :func:`classify` reports
such points as boundary-indeterminate instead of guessing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .angles import EPS, Angle, AngleLike, as_angles, normalize_pi_units
from .lpoly import LaurentPolynomial, TransformMatrix, support_matrix

__all__ = [
    "Angle",
    "TorusPoint",
    "HyperplaneFamily",
    "Membership",
    "torus_point",
    "phase_list",
    "max_circular_gap",
    "classify",
    "in_lopsided_coamoeba",
    "in_closed_complement",
    "in_closed_lopsided",
    "in_coamoeba",
    "trinomial_union_check",
    "shell",
    "on_shell",
    "transform_theta",
]

TorusPoint = tuple[Angle, ...]
TWO_PI = 2.0 * math.pi


def torus_point(theta: Sequence[AngleLike] | AngleLike) -> TorusPoint:
    """Coerce and reduce every coordinate to ``(-pi, pi]``."""
    return tuple(a.principal() for a in as_angles(theta))


def _raw_phases(f: LaurentPolynomial, theta: Sequence[Angle]) -> tuple[list, bool]:
    """Unnormalized phases ``arg c_k + <alpha_k, theta>``.

    Exact mode returns Fractions in units of pi, float mode radians.
    """
    if len(theta) != f.n:
        raise ValueError(f"theta has {len(theta)} coordinates, polynomial has n = {f.n}")
    if f.exact and all(t.exact for t in theta):
        tq = [t.q for t in theta]
        out = []
        for e, c in f.terms:
            acc = c.angle.q
            for a, t in zip(e, tq):
                if a:
                    acc += a * t
            out.append(acc)
        return out, True
    tr = [t.radians for t in theta]
    out = []
    for e, c in f.terms:
        acc = c.angle.radians
        for a, t in zip(e, tr):
            if a:
                acc += a * t
        out.append(acc)
    return out, False


def _principal_raw(vals: list, exact: bool) -> list:
    if exact:
        return [normalize_pi_units(v) for v in vals]
    out = []
    for v in vals:
        r = math.remainder(v, TWO_PI)
        out.append(math.pi if r <= -math.pi else r)
    return out


def phase_list(f: LaurentPolynomial, theta: Sequence[AngleLike] | AngleLike) -> tuple[Angle, ...]:
    """The phases ``arg(c_k) + <alpha_k, theta>`` reduced to ``(-pi, pi]``."""
    vals, exact = _raw_phases(f, as_angles(theta))
    vals = _principal_raw(vals, exact)
    return tuple(Angle(q=v) if exact else Angle.rad(v) for v in vals)


def _gap_raw(vals: list, full) -> tuple[object, object]:
    """Largest circular gap of principal values and the angle where it starts."""
    s = sorted(vals)
    best = full - (s[-1] - s[0])
    start = s[-1]
    for a, b in zip(s, s[1:]):
        if b - a > best:
            best, start = b - a, a
    return best, start


def max_circular_gap(phases: Sequence[AngleLike]) -> tuple[Angle, Angle]:
    """``(gap, midpoint)``: the largest empty arc between circularly consecutive phases.

    ``gap`` lies in ``[0, 2*pi]`` (``2*pi`` when all phases coincide) and
    ``midpoint`` is the direction bisecting that arc.
    """
    angs = [a.principal() for a in as_angles(phases)]
    if not angs:
        raise ValueError("empty phase list")
    if all(a.exact for a in angs):
        gap, start = _gap_raw([a.q for a in angs], Fraction(2))
        return Angle(q=gap), Angle(q=normalize_pi_units(start + gap / 2))
    gap, start = _gap_raw([a.radians for a in angs], TWO_PI)
    return Angle.rad(gap), Angle.rad(start + gap / 2).principal()


@dataclass(frozen=True)
class Membership:
    """Outcome of the half-plane tests at one point."""

    gap: Angle
    in_lopsided_coamoeba: bool
    in_closed_complement: bool
    indeterminate: bool = False

    @property
    def in_closed_lopsided(self) -> bool:
        return not self.in_closed_complement


def _classify_raw(vals: list, exact: bool) -> tuple[bool, bool, bool, object]:
    """(in_LA, in_closed_complement, indeterminate, gap) from principal phases."""
    if exact:
        gap, start = _gap_raw(vals, Fraction(2))
        if gap > 1:
            return False, True, False, gap
        if gap < 1:
            return True, False, False, gap
        end = normalize_pi_units(start + 1)
        on_line = all(v == start or v == end for v in vals)
        return on_line, False, False, gap
    gap, start = _gap_raw(vals, TWO_PI)
    if gap > math.pi + EPS:
        return False, True, False, gap
    if gap < math.pi - EPS:
        return True, False, False, gap
    end = start + math.pi

    def near(v, w):
        return abs(math.remainder(v - w, TWO_PI)) <= EPS

    on_line = all(near(v, start) or near(v, end) for v in vals)
    return on_line, False, True, gap


def classify(f: LaurentPolynomial, theta: Sequence[AngleLike] | AngleLike) -> Membership:
    vals, exact = _raw_phases(f, as_angles(theta))
    vals = _principal_raw(vals, exact)
    in_la, in_cc, indet, gap = _classify_raw(vals, exact)
    return Membership(Angle(q=gap) if exact else Angle.rad(gap), in_la, in_cc, indet)


def in_lopsided_coamoeba(f: LaurentPolynomial, theta) -> bool:
    """True iff the phase list is *not* lopsided (zero lies in its positive cone)."""
    return classify(f, theta).in_lopsided_coamoeba


def in_closed_complement(f: LaurentPolynomial, theta) -> bool:
    """True iff all phases lie in one open half-plane (gap strictly above pi)."""
    return classify(f, theta).in_closed_complement


def in_closed_lopsided(f: LaurentPolynomial, theta) -> bool:
    return not classify(f, theta).in_closed_complement


def in_coamoeba(f: LaurentPolynomial, theta) -> bool:
    """Coamoeba membership, available when the support is a simplex.

    For simplices the coamoeba equals the lopsided coamoeba; other supports
    raise ``ValueError`` since gap tests cannot decide them.
    """
    A = support_matrix(f)
    if A.m != 0 or not A.full_dimensional:
        raise ValueError("exact coamoeba membership needs a simplex support")
    return in_lopsided_coamoeba(f, theta)


def trinomial_union_check(f: LaurentPolynomial, theta) -> bool:
    """True iff some trinomial of ``f`` has ``theta`` in its closed lopsided coamoeba."""
    if f.N < 3:
        raise ValueError("trinomial union needs at least three terms")
    vals, exact = _raw_phases(f, as_angles(theta))
    vals = _principal_raw(vals, exact)
    for idx in combinations(range(f.N), 3):
        _, in_cc, _, _ = _classify_raw([vals[i] for i in idx], exact)
        if not in_cc:
            return True
    return False


@dataclass(frozen=True)
class HyperplaneFamily:
    """``{theta : <normal, theta> = offset (mod 2 pi)}`` for the pair ``(j, k)``."""

    normal: tuple[int, ...]
    offset: Angle
    pair: tuple[int, int]


def shell(f: LaurentPolynomial) -> list[HyperplaneFamily]:
    """One hyperplane family per binomial ``c_j z^a + c_k z^b`` of ``f``.

    The binomial vanishes on the torus exactly where
    ``<b - a, theta> = pi + arg c_j - arg c_k (mod 2 pi)``.
    """
    out = []
    for j, k in combinations(range(f.N), 2):
        (a, cj), (b, ck) = f.terms[j], f.terms[k]
        normal = tuple(y - x for x, y in zip(a, b))
        offset = (Angle.pi(1) + cj.angle - ck.angle).principal()
        out.append(HyperplaneFamily(normal, offset, (j, k)))
    return out


def on_shell(f: LaurentPolynomial, theta, eps: float = EPS) -> bool:
    theta = as_angles(theta)
    for fam in shell(f):
        val = sum((t * k for k, t in zip(fam.normal, theta) if k), Angle.pi(0)) - fam.offset
        if val.exact:
            if val.q % 2 == 0:
                return True
        elif abs(math.remainder(val.radians, TWO_PI)) <= eps:
            return True
    return False


def transform_theta(T, theta) -> TorusPoint:
    """Image of ``theta`` under ``(T^-1)^t``, reduced to ``(-pi, pi]``."""
    T = T if isinstance(T, TransformMatrix) else TransformMatrix(tuple(tuple(r) for r in T))
    M = T.inverse_transpose()
    theta = as_angles(theta)
    out = []
    for row in M:
        acc = Angle.pi(0)
        for coef, t in zip(row, theta):
            if coef:
                acc = acc + t * coef
        out.append(acc.principal())
    return tuple(out)
