import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from coamoeba import parse_polynomial
from coamoeba.angles import Angle
from coamoeba.lpoly import LaurentPolynomial, Coefficient, apply_transform
from coamoeba.torus import (
    classify,
    in_closed_complement,
    in_coamoeba,
    in_lopsided_coamoeba,
    max_circular_gap,
    on_shell,
    phase_list,
    shell,
    transform_theta,
    trinomial_union_check,
)

from conftest import FIVE_ORDERS, TWO_TRIANGLE


def hull_margin(phases):
    """Largest ``d`` with ``0 = sum w_k e^{i phi_k}``, ``sum w = 1``, ``w_k >= d``.

    Positive iff zero is in the relative interior of the hull of the unit
    vectors, negative iff zero is outside the hull.
    """
    K = len(phases)
    c = np.zeros(K + 1)
    c[-1] = -1.0
    A_eq = np.zeros((3, K + 1))
    A_eq[0, :K] = np.cos(phases)
    A_eq[1, :K] = np.sin(phases)
    A_eq[2, :K] = 1.0
    b_eq = [0.0, 0.0, 1.0]
    A_ub = np.hstack([-np.eye(K), np.ones((K, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(K), A_eq=A_eq, b_eq=b_eq,
                  bounds=[(None, None)] * K + [(None, 1.0)])
    return res.x[-1] if res.status == 0 else -1.0


def test_two_triangle_points():
    f = parse_polynomial(TWO_TRIANGLE, 2)
    th = (Angle.pi(-2, 3), Angle.pi(0))
    assert in_closed_complement(f, th)
    assert not in_lopsided_coamoeba(f, th)
    assert in_lopsided_coamoeba(f, (Angle.pi(0), Angle.pi(1)))


def test_gap_values():
    gap, mid = max_circular_gap([Angle.pi(0), Angle.pi(1, 2)])
    assert gap == Angle.pi(3, 2) and mid == Angle.pi(-3, 4)
    assert max_circular_gap([Angle.pi(1, 3)] * 3)[0] == Angle.pi(2)
    gap, _ = max_circular_gap([0.0, 1.0])
    assert gap.radians == pytest.approx(2 * math.pi - 1.0)


def test_line_cases():
    f = parse_polynomial("1 + z1 + z2", 2)
    # phases 0, pi, pi: on a line through the origin, zero in the relative interior
    assert in_lopsided_coamoeba(f, (Angle.pi(1), Angle.pi(1)))
    # phases 0, pi, pi/2: gap exactly pi but not on the line
    m = classify(f, (Angle.pi(1), Angle.pi(1, 2)))
    assert not m.in_lopsided_coamoeba and not m.in_closed_complement


def test_float_mode_flags_indeterminate():
    f = parse_polynomial("1 + z1 + z2", 2)
    m = classify(f, (math.pi, math.pi / 2))
    assert m.indeterminate and not m.in_closed_complement
    assert not classify(f, (0.3, -0.2)).indeterminate


def test_phase_list():
    f = parse_polynomial(FIVE_ORDERS, 1)
    ph = phase_list(f, Angle.pi(-7, 8))
    assert ph == (Angle.pi(0), Angle.pi(-5, 8), Angle.pi(1, 8))


def test_shell_families():
    f = parse_polynomial(FIVE_ORDERS, 1)
    fams = shell(f)
    assert sorted(abs(fam.normal[0]) for fam in fams) == [2, 3, 5]
    offsets = {abs(fam.normal[0]): fam.offset for fam in fams}
    assert offsets[3] == Angle.pi(1)
    assert {offsets[5], offsets[2]} <= {Angle.pi(1, 2), Angle.pi(-1, 2)}
    assert on_shell(f, Angle.pi(1, 3))
    assert not on_shell(f, Angle.pi(0))


def test_in_coamoeba_requires_simplex():
    f = parse_polynomial("1 + z1 + z2", 2)
    assert in_coamoeba(f, (Angle.pi(1, 2), Angle.pi(-3, 4)))
    assert not in_coamoeba(f, (Angle.pi(0), Angle.pi(0)))
    with pytest.raises(ValueError):
        in_coamoeba(parse_polynomial(TWO_TRIANGLE, 2), (Angle.pi(0), Angle.pi(0)))


def test_trinomial_union_needs_three_terms():
    with pytest.raises(ValueError):
        trinomial_union_check(parse_polynomial("1 + z1", 1), Angle.pi(0))


angles = st.fractions(min_value=-1, max_value=1, max_denominator=12).map(lambda q: Angle(q=q))


@st.composite
def poly_and_point(draw):
    n = draw(st.integers(1, 3))
    exps = draw(st.lists(st.tuples(*[st.integers(-3, 3)] * n), min_size=2, max_size=7, unique=True))
    terms = tuple((e, Coefficient(Fraction(1), draw(angles))) for e in exps)
    theta = tuple(draw(angles) for _ in range(n))
    return LaurentPolynomial(terms, n), theta


@given(poly_and_point())
def test_classification_matches_hull_oracle(case):
    f, theta = case
    phases = np.array([a.radians for a in phase_list(f, theta)])
    d = hull_margin(phases)
    m = classify(f, theta)
    if d > 1e-7:
        assert m.in_lopsided_coamoeba and not m.in_closed_complement
    elif d < -1e-7:
        assert m.in_closed_complement and not m.in_lopsided_coamoeba
    else:
        assert not m.in_lopsided_coamoeba and not m.in_closed_complement


@given(poly_and_point())
def test_trinomial_union(case):
    f, theta = case
    if f.N < 3:
        return
    assert trinomial_union_check(f, theta) == (not in_closed_complement(f, theta))


@given(poly_and_point())
def test_exact_and_float_modes_agree_off_the_boundary(case):
    f, theta = case
    m = classify(f, theta)
    if m.gap == Angle.pi(1):
        return
    mf = classify(f, tuple(t.radians for t in theta))
    assert (mf.in_lopsided_coamoeba, mf.in_closed_complement) == (m.in_lopsided_coamoeba, m.in_closed_complement)


def test_transform_equivariance_example():
    f = parse_polynomial("1 + z1 + i*z2 + z1*z2^2", 2)
    T = [[1, 1], [0, 1]]
    g = apply_transform(f, T)
    for a in range(-4, 5):
        for b in range(-4, 5):
            th = (Angle.pi(a, 4), Angle.pi(b, 4))
            assert classify(f, th).in_closed_complement == classify(g, transform_theta(T, th)).in_closed_complement
