"""Seeded random instances and property suites.

Each suite returns a :class:`SuiteResult`; the command line ``check``
command and the test-suite both drive these.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .angles import Angle
from .circuits import base_points, circuit_count
from .gale import is_circuit, normalized_volume
from .intlin import maximal_minor_gcd
from .lpoly import Coefficient, LaurentPolynomial, apply_transform, multiply_monomial, support_matrix
from .ordermap import _ratio_and_lattice, cord, enumerate_orders, is_generic, witness_theta
from .torus import classify, shell, transform_theta, trinomial_union_check

__all__ = [
    "SuiteResult",
    "random_angle",
    "random_theta",
    "random_polynomial",
    "random_unimodular",
    "random_circuit",
    "suite_trinomial_union",
    "suite_p_integrality",
    "suite_monomial_invariance",
    "suite_transform_equivariance",
    "suite_circuit_consistency",
    "suite_roundtrip",
    "suite_base_points",
    "SUITES",
    "run_suites",
]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    skipped: int = 0
    examples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, detail) -> None:
        self.failures += 1
        if len(self.examples) < 5:
            self.examples.append(detail)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "skipped": self.skipped,
            "examples": [str(e) for e in self.examples],
        }


# ---------------------------------------------------------------- sampling

def random_angle(rng: random.Random, max_den: int = 64) -> Angle:
    den = rng.randint(1, max_den)
    return Angle(q=Fraction(rng.randint(-den, den), den)).principal()


def random_theta(rng: random.Random, n: int, max_den: int = 64) -> tuple[Angle, ...]:
    return tuple(random_angle(rng, max_den) for _ in range(n))


def random_polynomial(rng: random.Random, N: int, n: int, exp_range: int = 4, max_den: int = 64,
                      moduli: bool = True) -> LaurentPolynomial:
    """``N`` distinct exponents in ``[-exp_range, exp_range]^n`` with exact angles."""
    if N > (2 * exp_range + 1) ** n:
        raise ValueError("not enough lattice points for distinct exponents")
    exps: set[tuple[int, ...]] = set()
    while len(exps) < N:
        exps.add(tuple(rng.randint(-exp_range, exp_range) for _ in range(n)))
    terms = []
    for e in sorted(exps, key=lambda _: rng.random()):
        r = Fraction(rng.randint(1, 9), rng.randint(1, 9)) if moduli else Fraction(1)
        terms.append((e, Coefficient(r, random_angle(rng, max_den))))
    return LaurentPolynomial(tuple(terms), n)


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> tuple[tuple[int, ...], ...]:
    """Product of random elementary integer matrices and a signed permutation."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    M = [[M[perm[i]][j] * rng.choice((-1, 1)) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return tuple(tuple(r) for r in M)


def random_circuit(rng: random.Random, n: int, exp_range: int = 4, max_den: int = 64,
                   generic: bool = True, attempts: int = 10_000) -> LaurentPolynomial:
    """A circuit with ``g_A = 1`` and (optionally) generic exact angles."""
    for _ in range(attempts):
        exps = {tuple(rng.randint(-exp_range, exp_range) for _ in range(n)) for _ in range(n + 2)}
        if len(exps) < n + 2:
            continue
        exps = sorted(exps)
        A = support_matrix(LaurentPolynomial.from_terms(exps, [1] * (n + 2), n))
        if not A.full_dimensional or not is_circuit(A) or maximal_minor_gcd(A.matrix, n + 1) != 1:
            continue
        for _ in range(20):
            terms = tuple((e, Coefficient(Fraction(1), random_angle(rng, max_den))) for e in exps)
            f = LaurentPolynomial(terms, n)
            if not generic or is_generic(f):
                return f
    raise RuntimeError("could not sample a circuit")


# ------------------------------------------------------------------ suites

def _membership(f, theta):
    m = classify(f, theta)
    return m.in_lopsided_coamoeba, m.in_closed_complement


def suite_trinomial_union(cases, result: SuiteResult) -> None:
    """Closed lopsided coamoeba equals the union over trinomials."""
    for f, theta in cases:
        if f.N < 3:
            result.skipped += 1
            continue
        result.cases += 1
        if trinomial_union_check(f, theta) != (not classify(f, theta).in_closed_complement):
            result.fail((str(f), theta))


def suite_p_integrality(cases, result: SuiteResult) -> None:
    """The p-vector is exactly ``2 pi`` times an integer vector, for every base index."""
    for f, theta in cases:
        for alpha in range(f.N):
            result.cases += 1
            try:
                ratio, lat, exact = _ratio_and_lattice(f, theta, alpha)
            except (AssertionError, ValueError) as exc:
                result.fail((str(f), theta, alpha, exc))
                continue
            if not exact or any(not isinstance(x, int) for x in lat):
                result.fail((str(f), theta, alpha, "not exact"))


def suite_monomial_invariance(cases, rng: random.Random, result: SuiteResult) -> None:
    """Membership does not change under multiplication by a monomial and a constant."""
    for f, theta in cases:
        result.cases += 1
        shift = [rng.randint(-3, 3) for _ in range(f.n)]
        scale = Coefficient(Fraction(rng.randint(1, 5)), random_angle(rng))
        g = multiply_monomial(f, shift, scale)
        if _membership(f, theta) != _membership(g, theta):
            result.fail((str(f), theta, shift))


def suite_transform_equivariance(cases, rng: random.Random, result: SuiteResult, transforms: int = 100) -> None:
    """``theta`` in the set for ``f`` iff ``T^{-t} theta`` is for ``f(z^T)``."""
    by_n: dict[int, list] = {}
    for f, theta in cases:
        by_n.setdefault(f.n, []).append((f, theta))
    for n, group in by_n.items():
        Ts = [random_unimodular(rng, n) for _ in range(transforms)]
        for k, (f, theta) in enumerate(group):
            T = Ts[k % transforms]
            result.cases += 1
            g = apply_transform(f, T)
            if _membership(f, theta) != _membership(g, transform_theta(T, theta)):
                result.fail((str(f), theta, T))


def suite_circuit_consistency(polys, result: SuiteResult) -> None:
    """Order count equals the normalized volume for generic circuits with ``g_A = 1``."""
    for f in polys:
        A = support_matrix(f)
        if not (A.full_dimensional and is_circuit(A) and f.exact) or maximal_minor_gcd(A.matrix, A.n + 1) != 1:
            result.skipped += 1
            continue
        if not is_generic(f):
            result.skipped += 1
            continue
        result.cases += 1
        k = len(enumerate_orders(f))
        if k != circuit_count(A):
            result.fail((str(f), k, circuit_count(A)))


def _shell_signature(families, theta) -> tuple[Fraction, ...]:
    """Binomial congruence values ``<normal, theta> - offset`` mod ``2 pi``."""
    return tuple(
        (sum((x.q * k for k, x in zip(fam.normal, theta) if k), Fraction(0)) - fam.offset.q) % 2
        for fam in families
    )


def suite_roundtrip(polys, result: SuiteResult) -> None:
    """``cord(witness(p)) = p``; witnesses of distinct orders are distinct and shell-separated.

    Two witnesses are separated when some binomial congruence value differs,
    so pairwise separation is distinctness of the value tuples.
    """
    for f in polys:
        if not f.exact:
            result.skipped += 1
            continue
        families = shell(f)
        orders = enumerate_orders(f)
        keys, sigs = set(), set()
        for p in orders:
            result.cases += 1
            th = witness_theta(f, None, p)
            if cord(f, None, th) != p:
                result.fail((str(f), p, th))
            keys.add(tuple(a.principal().q for a in th))
            sigs.add(_shell_signature(families, th))
        if len(keys) != len(orders):
            result.fail((str(f), "witnesses coincide"))
        if len(sigs) != len(orders):
            result.fail((str(f), "witnesses not separated by the shell"))


def suite_base_points(polys, result: SuiteResult) -> None:
    """Base points: one per component, all in the complement, orders onto the order set."""
    for f in polys:
        A = support_matrix(f)
        if not (A.full_dimensional and is_circuit(A) and f.exact) or not is_generic(f):
            result.skipped += 1
            continue
        result.cases += 1
        bp = base_points(f)
        vol = int(normalized_volume(A))
        if not bp.complete or len(bp) != vol or set(bp.orders) != set(enumerate_orders(f)):
            result.fail((str(f), len(bp), vol, len(bp.rejected)))


SUITES: dict[str, str] = {
    "trinomial-union": "closed lopsided set equals the union over trinomials",
    "p-integrality": "p-vectors are exact integer multiples of 2 pi",
    "monomial-invariance": "membership invariant under monomial multiplication",
    "transform-equivariance": "membership equivariant under unimodular transforms",
    "circuit-consistency": "order count equals normalized volume on generic circuits",
    "roundtrip": "witnesses map back to their orders",
    "base-points": "base points hit every component once",
}


def run_suites(
    names=None,
    f: LaurentPolynomial | None = None,
    cases: int = 200,
    seed: int = 0,
    max_terms: int = 7,
    max_n: int = 3,
) -> list[SuiteResult]:
    """Run the named suites (all by default).

    With ``f`` given, point-based suites use random ``theta`` for that
    polynomial and the polynomial-level suites run on ``f`` alone; otherwise
    random polynomials with up to ``max_terms`` terms in up to ``max_n``
    variables are drawn.
    """
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    rng = random.Random(seed)
    if f is not None:
        if not f.exact:
            from .errors import ModeError

            raise ModeError("property suites need exact coefficient angles")
        point_cases = [(f, random_theta(rng, f.n)) for _ in range(cases)]
        polys = [f]
    else:
        point_cases = []
        for _ in range(cases):
            n = rng.randint(1, max_n)
            N = rng.randint(3, max_terms)
            point_cases.append((random_polynomial(rng, N, n), random_theta(rng, n)))
        polys = [random_circuit(rng, rng.randint(1, max_n)) for _ in range(max(1, cases // 50))]
    runners: dict[str, Callable[[SuiteResult], None]] = {
        "trinomial-union": lambda r: suite_trinomial_union(point_cases, r),
        "p-integrality": lambda r: suite_p_integrality(point_cases, r),
        "monomial-invariance": lambda r: suite_monomial_invariance(point_cases, rng, r),
        "transform-equivariance": lambda r: suite_transform_equivariance(point_cases, rng, r),
        "circuit-consistency": lambda r: suite_circuit_consistency(polys, r),
        "roundtrip": lambda r: suite_roundtrip(polys, r),
        "base-points": lambda r: suite_base_points(polys, r),
    }
    out = []
    for name in names:
        res = SuiteResult(name)
        runners[name](res)
        out.append(res)
    return out
