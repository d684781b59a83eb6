import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coamoeba.angles import Angle, as_angle, as_angles, dot_angle, normalize_pi_units

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=64)


@given(fractions)
def test_normalize_lands_in_half_open_interval(q):
    r = normalize_pi_units(q)
    assert -1 < r <= 1
    assert (q - r) % 2 == 0


def test_normalize_edges():
    assert normalize_pi_units(Fraction(-1)) == 1
    assert normalize_pi_units(Fraction(3)) == 1
    assert normalize_pi_units(Fraction(7, 2)) == Fraction(-1, 2)


@given(fractions, fractions)
def test_exact_arithmetic_stays_exact(a, b):
    s = Angle(q=a) + Angle(q=b)
    assert s.exact and s.q == a + b
    assert (Angle(q=a) - Angle(q=b)).q == a - b
    assert (Angle(q=a) * 3).q == 3 * a


def test_mixed_arithmetic_falls_back_to_radians():
    s = Angle.pi(1, 2) + Angle.rad(0.25)
    assert not s.exact
    assert s.radians == pytest.approx(math.pi / 2 + 0.25)


def test_principal_float():
    assert Angle.rad(-math.pi).principal().radians == pytest.approx(math.pi)
    assert Angle.rad(7.0).principal().radians == pytest.approx(7.0 - 2 * math.pi)


def test_coercions():
    assert as_angle(Fraction(1, 3)) == Angle.pi(1, 3)
    assert as_angle(2) == Angle.pi(2)
    assert not as_angle(0.5).exact
    assert as_angles(Fraction(1, 2)) == (Angle.pi(1, 2),)
    with pytest.raises(TypeError):
        as_angle(True)


def test_exact_and_float_angles_differ():
    assert Angle.pi(1) != Angle.rad(math.pi)
    assert len({Angle.pi(1, 2), Angle.pi(2, 4)}) == 1


def test_str_and_repr():
    assert str(Angle.pi(-3, 2)) == "-3*pi/2"
    assert str(Angle.pi(1)) == "pi"
    assert str(Angle.pi(0)) == "0"
    assert repr(Angle.pi(2, 3)) == "Angle.pi(2, 3)"


def test_dot_angle():
    assert dot_angle((2, -1), (Angle.pi(1, 3), Angle.pi(1, 2))) == Angle.pi(1, 6)
