import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from coamoeba import parse_polynomial, support_matrix
from coamoeba.angles import Angle
from coamoeba.checks import random_circuit, random_polynomial, random_theta
from coamoeba.errors import ModeError, NotInComplementError, UnsupportedError
from coamoeba.lpoly import Coefficient, multiply_monomial
from coamoeba.ordermap import (
    BOUNDARY,
    INTERIOR,
    OUTSIDE,
    count_components,
    cord,
    enumerate_orders,
    enumerate_orders_open,
    is_generic,
    lattice_translates,
    orders_report,
    p_vector,
    resolve_dual,
    translation,
    v,
    witness_theta,
    zonotope,
    zonotope_classify,
)
from coamoeba.torus import in_closed_complement

from conftest import FIVE_ORDERS, SQUARE, TWO_TRIANGLE, ZONOGON

F = Fraction


def values(points):
    return [p.value for p in points]


# ------------------------------------------------------------ worked examples

def test_two_triangle_orders(two_triangle):
    Z = zonotope(resolve_dual(two_triangle))
    assert Z.bounds() == (3,)
    assert translation(two_triangle) == (3,)
    assert values(enumerate_orders(two_triangle)) == [(-1,), (1,)]
    assert v(two_triangle, None, (Angle.pi(-2, 3), Angle.pi(0)), 1).value == (1,)
    assert v(two_triangle, None, (Angle.pi(2, 3), Angle.pi(0)), 1).value == (-1,)
    # the translate 3*pi sits on a vertex
    assert (F(3),) in [p.value for p, pos, vert in lattice_translates(two_triangle) if pos == BOUNDARY and vert]
    assert not is_generic(two_triangle)


def test_five_orders(five_orders):
    assert zonotope(resolve_dual(five_orders)).bounds() == (5,)
    assert translation(five_orders) == (F(3, 2),)
    assert values(enumerate_orders(five_orders)) == [(F(k, 2),) for k in (-9, -5, -1, 3, 7)]
    table = {F(-7, 8): F(7, 2), F(-1, 2): F(-5, 2), F(0): F(3, 2), F(5, 16): F(-9, 2), F(3, 4): F(-1, 2)}
    for th, val in table.items():
        assert v(five_orders, None, Angle(q=th)).value == (val,)


def test_square(square):
    orders = enumerate_orders(square, [[1], [-1], [-1], [1]])
    assert values(orders) == [(F(-3, 2),), (F(1, 2),)]


def test_zonogon_open_count(zonogon):
    assert len(enumerate_orders_open(zonogon)) == 6
    assert len(enumerate_orders(zonogon)) < 6
    assert len(zonotope(resolve_dual(zonogon)).vertices()) == 8


def test_simplex_has_one_order():
    f = parse_polynomial("1 + z1 + z2", 2)
    assert resolve_dual(f) is None
    orders = enumerate_orders(f)
    assert len(orders) == 1 and orders[0].value == ()
    assert count_components(f).count == 1
    assert cord(f, None, (Angle.pi(0), Angle.pi(0))).value == ()
    assert witness_theta(f, None, ()) is not None
    assert orders_report(f)["zonotope"] == {"generators": [], "facet_normals": [], "bounds": []}


def test_cord_outside_complement(two_triangle):
    with pytest.raises(NotInComplementError):
        cord(two_triangle, None, (Angle.pi(0), Angle.pi(1)))


def test_float_coefficients_refuse_enumeration():
    f = parse_polynomial("1 + z1 + e^(0.3*i)*z1^2", 1)
    with pytest.raises(ModeError):
        enumerate_orders(f)
    # the maps themselves still work in float mode
    out = v(f, None, 2.0)
    assert not out.exact


def test_zonotope_classify_interval():
    Z = zonotope([[-1], [-1], [-1], [3]])
    assert zonotope_classify(Z, (F(1),)) == (INTERIOR, False)
    assert zonotope_classify(Z, (F(3),)) == (BOUNDARY, True)
    assert zonotope_classify(Z, (F(5),)) == (OUTSIDE, False)


def test_open_variant_limited_to_low_codimension():
    f = parse_polynomial("1 + z1 + z1^2 + z1^3 + z1^4", 1)
    with pytest.raises(UnsupportedError):
        enumerate_orders_open(f)


def test_report_is_json(five_orders):
    rep = orders_report(five_orders, witnesses=True)
    json.dumps(rep)
    assert rep["count"] == 5 and rep["bijective"]
    assert rep["translation"][0]["pi_rational"] == "3/2"
    assert all(o["witness"] is not None for o in rep["orders"])


# --------------------------------------------------------------- oracles

def zonotope_norm(B, p):
    """``min max |mu_j|`` subject to ``sum mu_j b_j / 2 = p``, by linear programming."""
    B = np.array(B, float)
    N, m = B.shape
    c = np.zeros(N + 1)
    c[-1] = 1.0
    A_ub = np.vstack([np.hstack([np.eye(N), -np.ones((N, 1))]), np.hstack([-np.eye(N), -np.ones((N, 1))])])
    A_eq = np.hstack([B.T / 2, np.zeros((m, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(2 * N), A_eq=A_eq, b_eq=np.array(p, float),
                  bounds=[(None, None)] * (N + 1))
    return res.fun


small_B = st.integers(2, 5).flatmap(
    lambda N: st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=N, max_size=N)
)


@given(small_B, st.tuples(st.fractions(-6, 6, max_denominator=4), st.fractions(-6, 6, max_denominator=4)))
def test_classification_matches_lp(rows, p):
    arr = np.array(rows)
    if np.linalg.matrix_rank(arr) < 2:
        return
    Z = zonotope(rows)
    pos, _ = zonotope_classify(Z, p)
    norm = zonotope_norm(rows, [float(x) for x in p])
    if norm < 1 - 1e-7:
        assert pos == INTERIOR
    elif norm > 1 + 1e-7:
        assert pos == OUTSIDE
    else:
        assert pos == BOUNDARY


@given(small_B)
def test_vertices_match_hull_of_sign_sums(rows):
    if np.linalg.matrix_rank(np.array(rows)) < 2:
        return
    Z = zonotope(rows)
    sums = {tuple(sum(s * F(r[i], 2) for s, r in zip(signs, rows)) for i in range(2))
            for signs in itertools.product((-1, 1), repeat=len(rows))}
    pts = sorted(sums)
    hull = ConvexHull(np.array(pts, float))
    expected = {pts[i] for i in hull.vertices}
    got = Z.vertices()
    assert set(got) == expected and len(got) == len(expected)
    assert all(zonotope_classify(Z, q) == (BOUNDARY, True) for q in got)


def brute_orders(f, box=6):
    """Interior points of ``(Arg c + 2 l) B`` over a box of integer vectors ``l``."""
    D = resolve_dual(f)
    rows = D.rows()
    Z = zonotope(D)
    base = [a.q for a in f.angles]
    out = set()
    for l in itertools.product(range(-box, box + 1), repeat=f.N - 1):
        l = (0,) + l
        q = tuple(sum((base[k] + 2 * l[k]) * rows[k][j] for k in range(f.N)) for j in range(D.m))
        if zonotope_classify(Z, q)[0] == INTERIOR:
            out.add(q)
    return out


@pytest.mark.parametrize("text, n", [(TWO_TRIANGLE, 2), (FIVE_ORDERS, 1), (SQUARE, 2), (ZONOGON, 2)])
def test_enumeration_matches_brute_force(text, n):
    f = parse_polynomial(text, n)
    assert set(values(enumerate_orders(f))) == brute_orders(f, box=4)


def test_random_enumeration_matches_brute_force():
    rng = random.Random(3)
    for _ in range(8):
        f = random_circuit(rng, rng.randint(1, 2), exp_range=2)
        assert set(values(enumerate_orders(f))) == brute_orders(f, box=5)


# ------------------------------------------------------------ properties

@st.composite
def complement_points(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    n = rng.randint(1, 3)
    for _ in range(200):
        f = random_polynomial(rng, rng.randint(n + 2, n + 4), n, exp_range=3)
        th = random_theta(rng, n)
        A = support_matrix(f)
        if A.full_dimensional and A.m > 0 and in_closed_complement(f, th):
            return f, th
    return None


@given(complement_points())
def test_v_lies_in_zonotope_for_every_base_index(case):
    if case is None:
        return
    f, th = case
    D = resolve_dual(f)
    Z = zonotope(D)
    first = v(f, D, th, 0)
    for a in range(f.N):
        out = v(f, D, th, a)
        assert zonotope_classify(Z, out)[0] == INTERIOR
        assert out == first


@given(complement_points())
def test_v_ignores_two_pi_shifts(case):
    if case is None:
        return
    f, th = case
    shifted = tuple(Angle(q=t.q + 2 * k) for k, t in enumerate(th, start=1))
    assert v(f, None, shifted) == v(f, None, th)


@given(complement_points(), st.data())
def test_cord_invariant_under_monomial_multiplication(case, data):
    if case is None:
        return
    f, th = case
    shift = data.draw(st.lists(st.integers(-3, 3), min_size=f.n, max_size=f.n))
    g = multiply_monomial(f, shift, Coefficient(F(2), Angle.pi(1, 7)))
    assert cord(g, None, th) == cord(f, None, th)


@given(complement_points(), st.data())
def test_cord_locally_constant(case, data):
    if case is None:
        return
    f, th = case
    eps = F(1, 4096)
    step = tuple(Angle(q=t.q + eps * data.draw(st.integers(-1, 1))) for t in th)
    if in_closed_complement(f, step):
        assert cord(f, None, step) == cord(f, None, th)


def test_p_vector_integral_at_lifts(five_orders):
    assert p_vector(five_orders, Angle.pi(-7, 8)) == (0, 1, 2)
    # lifting theta by 2*pi changes l but not v
    lifted = p_vector(five_orders, Angle(q=F(-7, 8) + 2))
    assert all(isinstance(x, int) for x in lifted)


def test_witness_roundtrip_on_examples(five_orders, two_triangle, zonogon):
    for f in (five_orders, two_triangle, zonogon):
        seen = set()
        for p in enumerate_orders(f):
            th = witness_theta(f, None, p)
            assert in_closed_complement(f, th)
            assert cord(f, None, th) == p
            seen.add(th)
        assert len(seen) == len(enumerate_orders(f))


def test_witness_rejects_points_off_the_lattice(five_orders):
    with pytest.raises(ValueError):
        witness_theta(five_orders, None, (F(1, 3),))
    with pytest.raises(ValueError):
        witness_theta(five_orders, None, (F(11, 2),))
