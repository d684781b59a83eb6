import pytest
from hypothesis import settings

from coamoeba import parse_polynomial

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

TWO_TRIANGLE = "z1^3 + z2 + z2^2 - z1*z2"
FIVE_ORDERS = "1 + z1^3 + i*z1^5"
SQUARE = "1 + z1 + z2 + i*z1*z2"
ZONOGON = "1 + z1 + z2 + z1^2*z2 - z1^3"
PENTAGON_SUPPORT = [(0, 0), (2, 0), (0, 3), (1, 3), (2, 2)]
DISCRIMINANT = (
    "729*z1^2 + 2187*z1^3 + 2187*z1^4 + 729*z1^5 + 1728*z2 + 4752*z1*z2 + 5400*z1^2*z2"
    " - 1404*z1^3*z2 - 864*z1^4*z2 + 3456*z2^2 - 5616*z1*z2^2 + 576*z1^2*z2^2"
    " + 256*z1^3*z2^2 + 1728*z2^3"
)


@pytest.fixture
def two_triangle():
    return parse_polynomial(TWO_TRIANGLE, 2)


@pytest.fixture
def five_orders():
    return parse_polynomial(FIVE_ORDERS, 1)


@pytest.fixture
def square():
    return parse_polynomial(SQUARE, 2)


@pytest.fixture
def zonogon():
    return parse_polynomial(ZONOGON, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance")
        for k in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[k])
