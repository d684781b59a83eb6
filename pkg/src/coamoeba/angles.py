"""Angles that are either exact rational multiples of pi or floats in radians."""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = ["Angle", "AngleLike", "as_angle", "as_angles", "dot_angle", "normalize_pi_units", "EPS"]

EPS = 1e-9
TWO_PI = 2.0 * math.pi


def normalize_pi_units(q: Fraction) -> Fraction:
    """Reduce ``q`` (meaning ``q*pi``) into ``(-1, 1]``."""
    r = q % 2
    return r - 2 if r > 1 else r


def _normalize_radians(x: float) -> float:
    r = math.remainder(x, TWO_PI)  # in [-pi, pi]
    return math.pi if r <= -math.pi else r


class Angle:
    """An angle, exact (``q*pi`` with ``q`` rational) or float (radians).

    Arithmetic keeps exactness whenever both operands are exact. Angles are
    *not* normalized on construction, because lifts to ``R^n`` matter for
    the order map; call :meth:`principal` to reduce to ``(-pi, pi]``.
    """

    __slots__ = ("_q", "_x")

    def __init__(self, q: Fraction | None = None, radians: float | None = None):
        if (q is None) == (radians is None):
            raise ValueError("give exactly one of q (units of pi) or radians")
        self._q = None if q is None else Fraction(q)
        self._x = None if radians is None else float(radians)

    @classmethod
    def pi(cls, num: int | Fraction = 1, den: int = 1) -> "Angle":
        """``Angle.pi(3, 4)`` is exactly ``3*pi/4``."""
        return cls(q=Fraction(num) / den)

    @classmethod
    def rad(cls, x: float) -> "Angle":
        return cls(radians=x)

    @property
    def exact(self) -> bool:
        return self._q is not None

    @property
    def q(self) -> Fraction:
        """The multiple of pi; only for exact angles."""
        if self._q is None:
            raise ValueError("float angle has no exact pi-multiple")
        return self._q

    @property
    def radians(self) -> float:
        if self._q is not None:
            return float(self._q) * math.pi
        return self._x

    def principal(self) -> "Angle":
        """Representative in ``(-pi, pi]``."""
        if self._q is not None:
            return Angle(q=normalize_pi_units(self._q))
        return Angle(radians=_normalize_radians(self._x))

    def _binop(self, other, op) -> "Angle":
        other = as_angle(other)
        if self.exact and other.exact:
            return Angle(q=op(self._q, other._q))
        return Angle(radians=op(self.radians, other.radians))

    def __add__(self, other) -> "Angle":
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other) -> "Angle":
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other) -> "Angle":
        return as_angle(other) - self

    def __neg__(self) -> "Angle":
        return Angle(q=-self._q) if self.exact else Angle(radians=-self._x)

    def __mul__(self, k) -> "Angle":
        if isinstance(k, Angle):
            raise TypeError("cannot multiply two angles")
        if self.exact and isinstance(k, Rational):
            return Angle(q=self._q * Fraction(k))
        return Angle(radians=self.radians * float(k))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Angle):
            return NotImplemented
        if self.exact != other.exact:
            return False
        return self._q == other._q if self.exact else self._x == other._x

    def __hash__(self) -> int:
        return hash(("q", self._q)) if self.exact else hash(("x", self._x))

    def __float__(self) -> float:
        return self.radians

    def __repr__(self) -> str:
        if self.exact:
            return f"Angle.pi({self._q.numerator}, {self._q.denominator})"
        return f"Angle.rad({self._x!r})"

    def __str__(self) -> str:
        if not self.exact:
            return repr(self._x)
        q = self._q
        if q == 0:
            return "0"
        num = "" if abs(q.numerator) == 1 else str(abs(q.numerator))
        sign = "-" if q < 0 else ""
        s = f"{sign}{num}{'*' if num else ''}pi"
        return s if q.denominator == 1 else f"{s}/{q.denominator}"


AngleLike = Union[Angle, Fraction, int, float]


def as_angle(x: AngleLike) -> Angle:
    """Coerce: ``Angle`` as is, ``Fraction``/``int`` as multiples of pi, ``float`` as radians."""
    if isinstance(x, Angle):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an angle")
    if isinstance(x, Rational):
        return Angle(q=Fraction(x))
    return Angle(radians=float(x))


def as_angles(xs: Iterable[AngleLike] | AngleLike) -> tuple[Angle, ...]:
    if isinstance(xs, (Angle, Rational, float)):
        return (as_angle(xs),)
    return tuple(as_angle(x) for x in xs)


def dot_angle(v: Sequence[int], theta: Sequence[Angle]) -> Angle:
    """``<v, theta>`` for an integer vector ``v``."""
    acc = Angle(q=Fraction(0))
    for k, t in zip(v, theta, strict=True):
        if k:
            acc = acc + t * k
    return acc
