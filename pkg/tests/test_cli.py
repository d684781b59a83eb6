import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from coamoeba import cli
from coamoeba.angles import Angle
from coamoeba.checks import SuiteResult
from coamoeba.errors import ModeError
from coamoeba.lpoly import ParseError

from conftest import FIVE_ORDERS, TWO_TRIANGLE


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def test_orders_two_triangle():
    code, rep = call("orders", TWO_TRIANGLE)
    assert code == 0
    assert [o["value"][0]["pi_rational"] for o in rep["orders"]] == ["-1", "1"]
    assert rep["translation"][0]["pi_rational"] == "3"
    assert rep["zonotope"]["bounds"][0]["pi_rational"] == "3"
    assert rep["B"] == [[-1], [-1], [-1], [3]]


def test_orders_open_and_witnesses():
    code, rep = call("orders-open", "1 + z1 + z2 + z1^2*z2 - z1^3", "--witness")
    assert code == 0 and rep["count"] == 6 and rep["open_variant"]
    # boundary orders have no witness in the open set; interior ones do
    with_witness = [o for o in rep["orders"] if o["witness"] is not None]
    code, closed = call("orders", "1 + z1 + z2 + z1^2*z2 - z1^3")
    assert len(with_witness) == closed["count"] < 6


def test_cord_and_witness():
    code, rep = call("cord", TWO_TRIANGLE, "--theta=-2pi/3,0")
    assert code == 0 and rep["order"]["value"][0]["pi_rational"] == "1"
    code, rep = call("witness", FIVE_ORDERS, "--order", "3pi/2")
    assert code == 0 and len(rep["theta"]) == 1
    q = Fraction(rep["theta"][0]["pi_rational"])
    code, back = call("cord", FIVE_ORDERS, f"--theta={q.numerator}pi/{q.denominator}")
    assert code == 0 and back["order"]["value"][0]["pi_rational"] == "3/2"


def test_cord_outside_complement_is_an_input_error():
    code, rep = call("cord", TWO_TRIANGLE, "--theta", "0,pi")
    assert code == 1 and rep["error"] == "NotInComplementError"


def test_count_and_basepoints():
    code, rep = call("count", FIVE_ORDERS)
    assert code == 0 and rep["count"] == 5 and rep["circuit_count"] == 5
    code, rep = call("basepoints", FIVE_ORDERS)
    assert code == 0 and rep["complete"] and len(rep["points"]) == 5
    code, rep = call("basepoints", TWO_TRIANGLE, "--strict")
    assert code == 1 and rep["error"] == "NonGenericError"


def test_gale_and_shell():
    code, rep = call("gale", FIVE_ORDERS)
    assert code == 0
    code, rep = call("shell", FIVE_ORDERS)
    assert code == 0 and sorted(abs(f["normal"][0]) for f in rep["families"]) == [2, 3, 5]


def test_render_outputs(tmp_path):
    ppm, svg = tmp_path / "a.ppm", tmp_path / "a.svg"
    code, rep = call("render", TWO_TRIANGLE, "--resolution", "200", "--out", str(ppm), "--svg", str(svg), "--overlay")
    assert code == 0 and rep["complement_components"] == 2
    assert ppm.read_bytes().startswith(b"P6")
    assert svg.read_text().count('class="interior"') == 2


def test_exit_codes():
    assert call("orders", "1 + z1 +")[0] == 1
    assert call("orders", "1 + e^(0.3*i)*z1 + z1^2")[0] == 2
    assert call("orders", "1 + e^(0.3*i)*z1 + z1^2", "--mode", "exact")[0] == 2
    assert call("orders", "1 + z1 + z1^2 + z1^3", "--B", "[[1],[1],[1],[1]]")[0] == 1
    assert call("nonsense")[0] == 1
    assert cli.run([], io.StringIO()) == 1


def test_float_mode_still_evaluates():
    code, rep = call("cord", FIVE_ORDERS, "--mode", "float", "--theta", "0.0")
    assert code == 0 and "float" in rep["order"]["value"][0]


def test_schema():
    code, rep = call("--schema")
    assert code == 0 and rep["version"] == "1"
    assert "orders" in rep["orders"]["properties"]


def test_check_on_a_polynomial():
    code, rep = call("check", TWO_TRIANGLE, "--cases", "50")
    assert code == 0 and rep["passed"]
    names = {s["suite"] for s in rep["suites"]}
    assert "trinomial-union" in names and "roundtrip" in names


def test_check_failure_exit_code(monkeypatch):
    def failing(names, f, cases, seed):
        r = SuiteResult("roundtrip", cases=1)
        r.fail("forced")
        return [r]

    monkeypatch.setattr(cli, "run_suites", failing)
    assert call("check")[0] == 3


def test_angle_syntax():
    assert cli.parse_angle("-2*pi/3") == Angle.pi(-2, 3)
    assert cli.parse_angle("3pi/4") == Angle.pi(3, 4)
    assert cli.parse_angle("pi") == Angle.pi(1)
    assert cli.parse_angle("0") == Angle.pi(0)
    assert not cli.parse_angle("0.25").exact
    with pytest.raises(ParseError):
        cli.parse_angle("pie")
    with pytest.raises(ModeError):
        cli.parse_order("0.5")
    assert cli.infer_n("1 + z + z^2") == 1 and cli.infer_n("z3 + z1 + 1") == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coamoeba", "count", "1 + z1 + z2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 1
