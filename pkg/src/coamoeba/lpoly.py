"""Laurent polynomials: data model, text parser/printer and support operations."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Sequence

import numpy as np

from .angles import Angle
from .intlin import fourier_motzkin_feasible, inverse_rational, rank_exact, to_object_array

__all__ = [
    "ParseError",
    "Coefficient",
    "LaurentPolynomial",
    "PointConfiguration",
    "TransformMatrix",
    "parse_polynomial",
    "format_polynomial",
    "support_matrix",
    "multiply_monomial",
    "trinomials",
    "binomials",
    "apply_transform",
    "newton_vertices",
]


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


Modulus = Fraction | float


@dataclass(frozen=True)
class Coefficient:
    """A nonzero complex number in polar form."""

    modulus: Modulus
    angle: Angle

    def __post_init__(self):
        if not self.modulus > 0:
            raise ValueError("coefficient modulus must be positive")
        object.__setattr__(self, "angle", self.angle.principal())

    @classmethod
    def from_complex(cls, z: complex) -> "Coefficient":
        if z == 0:
            raise ValueError("zero coefficient")
        return cls(abs(z), Angle.rad(math.atan2(z.imag, z.real)))

    @classmethod
    def from_cartesian(cls, a: Modulus, b: Modulus) -> "Coefficient":
        """Build ``a + b*i``; the angle is exact when it is a multiple of pi/4."""
        if a == 0 and b == 0:
            raise ValueError("zero coefficient")
        if b == 0:
            return cls(abs(a), Angle.pi(0 if a > 0 else 1))
        if a == 0:
            return cls(abs(b), Angle.pi(1 if b > 0 else -1, 2))
        if abs(a) == abs(b):
            q = {(1, 1): Fraction(1, 4), (-1, 1): Fraction(3, 4),
                 (-1, -1): Fraction(-3, 4), (1, -1): Fraction(-1, 4)}[(1 if a > 0 else -1, 1 if b > 0 else -1)]
            return cls(abs(a) * math.sqrt(2), Angle(q=q))
        return cls.from_complex(complex(float(a), float(b)))

    @property
    def exact(self) -> bool:
        return self.angle.exact

    @property
    def value(self) -> complex:
        return float(self.modulus) * complex(math.cos(self.angle.radians), math.sin(self.angle.radians))

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        return Coefficient(self.modulus * other.modulus, self.angle + other.angle)

    def rotate(self, angle: Angle) -> "Coefficient":
        return Coefficient(self.modulus, self.angle + angle)

    def scale(self, r: Modulus) -> "Coefficient":
        return Coefficient(self.modulus * r, self.angle)


ONE = Coefficient(Fraction(1), Angle.pi(0))


@dataclass(frozen=True)
class LaurentPolynomial:
    """``sum_k c_k z^{alpha_k}`` with distinct exponents, in input order."""

    terms: tuple[tuple[tuple[int, ...], Coefficient], ...]
    n: int

    def __post_init__(self):
        terms = tuple((tuple(int(x) for x in e), c) for e, c in self.terms)
        object.__setattr__(self, "terms", terms)
        if self.n < 1:
            raise ValueError("dimension n must be positive")
        if len(terms) < 2:
            raise ValueError("a polynomial needs at least two terms")
        seen = set()
        for e, c in terms:
            if len(e) != self.n:
                raise ValueError(f"exponent {e} does not have length {self.n}")
            if not isinstance(c, Coefficient):
                raise TypeError("coefficients must be Coefficient instances")
            if e in seen:
                raise ValueError(f"duplicate exponent {e}")
            seen.add(e)

    @classmethod
    def from_terms(cls, exponents: Sequence[Sequence[int]], coeffs: Sequence, n: int | None = None) -> "LaurentPolynomial":
        """Convenience constructor; coefficients may be ``Coefficient`` or complex numbers.

        Python ints/Fractions and ``1j``-style values on the axes become exact.
        """
        exps = [tuple(int(x) for x in e) for e in exponents]
        if n is None:
            n = len(exps[0])
        cs = []
        for c in coeffs:
            if isinstance(c, Coefficient):
                cs.append(c)
            elif isinstance(c, Rational):
                cs.append(Coefficient.from_cartesian(Fraction(c), Fraction(0)))
            else:
                z = complex(c)
                re_, im_ = z.real, z.imag
                if re_ == int(re_) and im_ == int(im_):
                    cs.append(Coefficient.from_cartesian(Fraction(int(re_)), Fraction(int(im_))))
                else:
                    cs.append(Coefficient.from_complex(z))
        return cls(tuple(zip(exps, cs)), n)

    @property
    def N(self) -> int:
        return len(self.terms)

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e, _ in self.terms)

    @property
    def coefficients(self) -> tuple[Coefficient, ...]:
        return tuple(c for _, c in self.terms)

    @property
    def angles(self) -> tuple[Angle, ...]:
        return tuple(c.angle for _, c in self.terms)

    @property
    def exact(self) -> bool:
        """True when every coefficient angle is a known rational multiple of pi."""
        return all(c.exact for _, c in self.terms)

    def __call__(self, z: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self.terms:
            t = c.value
            for zi, k in zip(z, e):
                t *= zi ** k
            total += t
        return total

    def __str__(self) -> str:
        return format_polynomial(self)


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """The homogenized support matrix: a row of ones over the exponent columns."""

    matrix: np.ndarray
    n: int
    N: int

    @property
    def m(self) -> int:
        return self.N - self.n - 1

    @property
    def rank(self) -> int:
        return rank_exact(self.matrix)

    @property
    def full_dimensional(self) -> bool:
        return self.rank == self.n + 1

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.matrix[:, k])

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix]


@dataclass(frozen=True)
class TransformMatrix:
    """An invertible rational ``n x n`` matrix acting on exponent columns."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("transform must be square")
        if self.determinant == 0:
            raise ValueError("transform must be invertible")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def determinant(self) -> Fraction:
        a = [list(r) for r in self.entries]
        n = len(a)
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for i in range(c + 1, n):
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((t * x for t, x in zip(row, v)), Fraction(0)) for row in self.entries)

    def inverse_transpose(self) -> tuple[tuple[Fraction, ...], ...]:
        inv = inverse_rational(self.entries)
        n = self.n
        return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<var>z\d*)|(?P<name>pi|i|e)|(?P<op>[-+*/^()]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tok_text = m.group(kind)
        # "e" and "i" glued to letters, e.g. "exp", are not tokens we know
        if kind == "name" and m.end() < len(text) and text[m.end()].isalpha() and tok_text != "pi":
            raise ParseError(f"unknown name starting with {tok_text!r}", start)
        toks.append(_Tok(kind, tok_text, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _number(text: str) -> Modulus:
    return float(text) if "." in text else Fraction(int(text))


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)

    def polynomial(self) -> LaurentPolynomial:
        terms = []
        seen: dict[tuple[int, ...], int] = {}
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        while True:
            pos = self.tok.pos
            exp, coef = self.term()
            if negate:
                coef = coef.rotate(Angle.pi(1))
            if exp in seen:
                raise ParseError(f"duplicate exponent {exp}", pos)
            seen[exp] = len(terms)
            terms.append((exp, coef))
            if self.accept("+"):
                negate = False
            elif self.accept("-"):
                negate = True
            elif self.tok.kind == "end":
                break
            else:
                raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        if len(terms) < 2:
            raise ParseError("a polynomial needs at least two terms", 0)
        return LaurentPolynomial(tuple(terms), self.n)

    def term(self) -> tuple[tuple[int, ...], Coefficient]:
        start = self.tok.pos
        exp = [0] * self.n
        modulus: Modulus = Fraction(1)
        angle = Angle.pi(0)
        first = True
        while True:
            if not first and self.accept("/"):
                tok = self.tok
                if tok.kind != "num":
                    raise ParseError("only numbers may follow '/'", tok.pos)
                self.i += 1
                d = _number(tok.text)
                if d == 0:
                    raise ParseError("division by zero", tok.pos)
                modulus = modulus / d
            else:
                if not first:
                    self.expect("*")
                kind, val = self.factor()
                if kind == "var":
                    idx, k = val
                    exp[idx] += k
                else:
                    if val.modulus == 0:
                        raise ParseError("zero coefficient", start)
                    modulus = modulus * val.modulus
                    angle = angle + val.angle
            first = False
            if not (self.tok.kind == "op" and self.tok.text in "*/"):
                break
        if modulus == 0:
            raise ParseError("zero coefficient", start)
        return tuple(exp), Coefficient(modulus, angle)

    def factor(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            val = _number(tok.text)
            return "coef", _RawCoef(val, Angle.pi(0))
        if tok.kind == "var":
            self.i += 1
            name = tok.text
            if name == "z":
                if self.n != 1:
                    raise ParseError("bare 'z' is only allowed when n = 1", tok.pos)
                idx = 1
            else:
                idx = int(name[1:])
            if idx < 1 or idx > self.n:
                raise ParseError(f"variable index {idx} out of range 1..{self.n}", tok.pos)
            k = 1
            if self.accept("^"):
                k = self.integer()
            return "var", (idx - 1, k)
        if tok.kind == "name" and tok.text == "i":
            self.i += 1
            return "coef", _RawCoef(Fraction(1), Angle.pi(1, 2))
        if tok.kind == "name" and tok.text == "e":
            self.i += 1
            self.expect("^")
            self.expect("(")
            ang = self.polar_exponent()
            self.expect(")")
            return "coef", _RawCoef(Fraction(1), ang)
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            a, b = self.cartesian()
            self.expect(")")
            if a == 0 and b == 0:
                return "coef", _RawCoef(Fraction(0), Angle.pi(0))
            c = Coefficient.from_cartesian(a, b)
            return "coef", _RawCoef(c.modulus, c.angle)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)

    def integer(self) -> int:
        paren = self.accept("(")
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        tok = self.tok
        if tok.kind != "num" or "." in tok.text:
            raise ParseError("expected an integer exponent", tok.pos)
        self.i += 1
        if paren:
            self.expect(")")
        return sign * int(tok.text)

    def cartesian(self) -> tuple[Modulus, Modulus]:
        """``a + b*i`` inside parentheses: sums of rational and rational*i terms."""
        re_part: Modulus = Fraction(0)
        im_part: Modulus = Fraction(0)
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        while True:
            val: Modulus = Fraction(sign)
            imag = False
            first = True
            while True:
                tok = self.tok
                if not first and self.accept("/"):
                    if self.tok.kind != "num":
                        raise ParseError("only numbers may follow '/'", self.tok.pos)
                    val = val / _number(self.tok.text)
                    self.i += 1
                else:
                    if not first:
                        self.expect("*")
                    tok = self.tok
                    if tok.kind == "num":
                        val = val * _number(tok.text)
                        self.i += 1
                    elif tok.kind == "name" and tok.text == "i":
                        if imag:
                            val = -val
                            imag = False
                        else:
                            imag = True
                        self.i += 1
                    else:
                        raise ParseError(f"unexpected {tok.text or 'end of input'!r} in complex constant", tok.pos)
                first = False
                if not (self.tok.kind == "op" and self.tok.text in "*/"):
                    break
            if imag:
                im_part = im_part + val
            else:
                re_part = re_part + val
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return re_part, im_part

    def polar_exponent(self) -> Angle:
        """The ``q*pi*i`` (exact) or ``x*i`` (radians) inside ``e^( )``."""
        start = self.tok.pos
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        val: Modulus = Fraction(sign)
        n_pi = n_i = 0
        first = True
        while True:
            if not first and self.accept("/"):
                if self.tok.kind != "num":
                    raise ParseError("only numbers may follow '/'", self.tok.pos)
                val = val / _number(self.tok.text)
                self.i += 1
            else:
                if not first:
                    self.expect("*")
                tok = self.tok
                if tok.kind == "num":
                    val = val * _number(tok.text)
                elif tok.kind == "name" and tok.text == "pi":
                    n_pi += 1
                elif tok.kind == "name" and tok.text == "i":
                    n_i += 1
                else:
                    raise ParseError(f"unexpected {tok.text or 'end of input'!r} in exponent", tok.pos)
                self.i += 1
            first = False
            if not (self.tok.kind == "op" and self.tok.text in "*/"):
                break
        if n_i != 1 or n_pi > 1:
            raise ParseError("exponent must look like q*pi*i or x*i", start)
        if n_pi == 1:
            if isinstance(val, Fraction):
                return Angle(q=val)
            return Angle.rad(val * math.pi)
        if isinstance(val, Fraction) and val == 0:
            return Angle.pi(0)
        return Angle.rad(float(val))


@dataclass
class _RawCoef:
    modulus: Modulus
    angle: Angle


def parse_polynomial(text: str, n: int) -> LaurentPolynomial:
    """Parse a Laurent polynomial in the variables ``z1..zn``.

    Terms are joined by ``+``/``-``; a term is a ``*``-product of numbers,
    ``i``, parenthesized constants ``(a+b*i)``, polar factors
    ``e^(q*pi*i)`` and powers ``zk^e`` (``e`` may be negative). Duplicate
    exponents are rejected rather than merged.

    >>> f = parse_polynomial("1 + z1^3 + i*z1^5", 1)
    >>> [str(c.angle) for c in f.coefficients]
    ['0', '0', 'pi/2']
    """
    if n < 1:
        raise ValueError("n must be positive")
    return _Parser(text, n).polynomial()


# ---------------------------------------------------------------- printing

def _fmt_modulus(r: Modulus) -> str:
    if isinstance(r, Fraction):
        return str(r)
    return repr(float(r))


def _fmt_coefficient(c: Coefficient) -> tuple[str, str]:
    """Return (sign, body); body is '' for a bare unit coefficient."""
    mod = _fmt_modulus(c.modulus)
    unit = c.modulus == 1
    if c.exact:
        q = c.angle.q
        if q == 0:
            return "+", "" if unit else mod
        if q == 1:
            return "-", "" if unit else mod
        if abs(q) == Fraction(1, 2):
            body = "i" if unit else f"{mod}*i"
            return ("+" if q > 0 else "-"), body
        return "+", f"{mod}*e^({q}*pi*i)"
    return "+", f"{mod}*e^({c.angle.radians!r}*i)"


def _fmt_monomial(e: Sequence[int]) -> str:
    parts = []
    for k, a in enumerate(e, start=1):
        if a == 0:
            continue
        parts.append(f"z{k}" if a == 1 else f"z{k}^{a}")
    return "*".join(parts)


def format_polynomial(f: LaurentPolynomial) -> str:
    """Canonical text form, terms in input order; ``parse_polynomial`` inverts it."""
    out = []
    for idx, (e, c) in enumerate(f.terms):
        sign, body = _fmt_coefficient(c)
        mono = _fmt_monomial(e)
        if body and mono:
            t = f"{body}*{mono}"
        else:
            t = body or mono or "1"
        if idx == 0:
            out.append(t if sign == "+" else f"-{t}")
        else:
            out.append(f" {sign} {t}")
    return "".join(out)


# ---------------------------------------------------------------- support

def support_matrix(f: LaurentPolynomial) -> PointConfiguration:
    """Column ``k`` is ``(1, alpha_k)``."""
    rows = [[1] * f.N] + [[e[i] for e in f.exponents] for i in range(f.n)]
    return PointConfiguration(to_object_array(rows), f.n, f.N)


def multiply_monomial(f: LaurentPolynomial, shift: Sequence[int], scale: Coefficient = ONE) -> LaurentPolynomial:
    """``scale * z^shift * f``."""
    if len(shift) != f.n:
        raise ValueError("shift has the wrong dimension")
    terms = tuple((tuple(a + s for a, s in zip(e, shift)), c * scale) for e, c in f.terms)
    return LaurentPolynomial(terms, f.n)


def _subpolys(f: LaurentPolynomial, k: int) -> list[LaurentPolynomial]:
    if f.N < k:
        raise ValueError(f"need at least {k} terms, polynomial has {f.N}")
    return [LaurentPolynomial(tuple(f.terms[i] for i in idx), f.n) for idx in combinations(range(f.N), k)]


def trinomials(f: LaurentPolynomial) -> list[LaurentPolynomial]:
    return _subpolys(f, 3)


def binomials(f: LaurentPolynomial) -> list[LaurentPolynomial]:
    return _subpolys(f, 2)


def _as_transform(T) -> TransformMatrix:
    return T if isinstance(T, TransformMatrix) else TransformMatrix(tuple(tuple(r) for r in T))


def apply_transform(f: LaurentPolynomial, T) -> LaurentPolynomial:
    """Monomial change of variables ``alpha -> T alpha``; ``T alpha`` must be integral."""
    T = _as_transform(T)
    if T.n != f.n:
        raise ValueError("transform dimension does not match the polynomial")
    terms = []
    for e, c in f.terms:
        img = T.apply(e)
        if any(x.denominator != 1 for x in img):
            raise ValueError(f"transform maps exponent {e} to non-integer {img}")
        terms.append((tuple(int(x) for x in img), c))
    return LaurentPolynomial(tuple(terms), f.n)


def newton_vertices(f: LaurentPolynomial) -> set[int]:
    """Indices of exponents that are vertices of the Newton polytope.

    ``alpha_k`` is a vertex iff some linear functional strictly separates it
    from the other exponents, i.e. ``<y, alpha_j - alpha_k> <= -1`` is
    feasible; that is decided by exact Fourier-Motzkin elimination over ``y``.
    """
    exps = f.exponents
    out = set()
    for k, ak in enumerate(exps):
        rows = [[aj[i] - ak[i] for i in range(f.n)] for j, aj in enumerate(exps) if j != k]
        if fourier_motzkin_feasible(rows, [-1] * len(rows)):
            out.add(k)
    return out
