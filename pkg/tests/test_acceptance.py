"""End-to-end acceptance checks.

Each criterion records a one-line verdict; ``conftest.py`` prints them at
the end of the run. Running this file directly prints the same lines.
"""
import io
import json
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from coamoeba import cli, parse_polynomial, support_matrix
from coamoeba.angles import Angle
from coamoeba.checks import random_circuit, random_polynomial, run_suites
from coamoeba.circuits import base_points, circuit_count
from coamoeba.gale import gale_dual, normalized_volume
from coamoeba.intlin import rank_exact
from coamoeba.ordermap import (
    count_components,
    cord,
    enumerate_orders,
    enumerate_orders_open,
    orders_report,
    resolve_dual,
    v,
    witness_theta,
)
from coamoeba.render import complement_component_count, raster_coamoeba_sampled
from coamoeba.torus import in_closed_complement

from conftest import DISCRIMINANT, FIVE_ORDERS, PENTAGON_SUPPORT, SQUARE, TWO_TRIANGLE, ZONOGON

F = Fraction
VERDICTS: dict[int, str] = {}


def record(k: int, title: str, ok: bool, detail: str) -> None:
    VERDICTS[k] = f"[{'PASS' if ok else 'FAIL'}] criterion {k:2d}: {title} ({detail})"
    print(VERDICTS[k])
    assert ok, detail


def cli_json(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, json.loads(out.getvalue())


def pi_values(points):
    return [F(c["pi_rational"]) for o in points for c in o["value"]]


@pytest.fixture(scope="module")
def random_circuits():
    rng = random.Random(2024)
    return [random_circuit(rng, rng.choice((1, 2, 3)), exp_range=4, max_den=64) for _ in range(200)]


def test_criterion_01_two_triangle():
    t0 = time.perf_counter()
    code, rep = cli_json("orders", TWO_TRIANGLE)
    f = parse_polynomial(TWO_TRIANGLE, 2)
    v1 = v(f, None, (Angle.pi(-2, 3), Angle.pi(0)), 1).value
    v2 = v(f, None, (Angle.pi(2, 3), Angle.pi(0)), 1).value
    elapsed = time.perf_counter() - t0
    ok = (
        code == 0
        and F(rep["zonotope"]["bounds"][0]["pi_rational"]) == 3
        and F(rep["translation"][0]["pi_rational"]) == 3
        and pi_values(rep["orders"]) == [-1, 1]
        and v1 == (1,) and v2 == (-1,)
        and elapsed < 1.0
    )
    record(1, "two-triangle orders {-pi, pi}, Z = [-3pi, 3pi], t = 3pi", ok,
           f"orders {[str(x) for x in pi_values(rep['orders'])]} pi, v = {v1[0]}, {v2[0]} pi, {elapsed:.3f}s")


def test_criterion_02_five_orders():
    f = parse_polynomial(FIVE_ORDERS, 1)
    rep = orders_report(f)
    table = {F(-7, 8): F(7, 2), F(-1, 2): F(-5, 2), F(0): F(3, 2), F(5, 16): F(-9, 2), F(3, 4): F(-1, 2)}
    got = {th: v(f, None, Angle(q=th)).value[0] for th in table}
    ok = (
        F(rep["zonotope"]["bounds"][0]["pi_rational"]) == 5
        and F(rep["translation"][0]["pi_rational"]) == F(3, 2)
        and pi_values(rep["orders"]) == [F(-9, 2), F(-5, 2), F(-1, 2), F(3, 2), F(7, 2)]
        and got == table
    )
    record(2, "1 + z^3 + i z^5: five orders and five v values", ok, f"orders {[str(x) for x in pi_values(rep['orders'])]} pi")


def test_criterion_03_zonogon():
    f = parse_polynomial(ZONOGON, 2)
    k = len(enumerate_orders_open(f))
    vol = normalized_volume(support_matrix(f))
    record(3, "zonogon open count 6, normalized volume 5", k == 6 and vol == 5, f"open count {k}, volume {vol}")


def test_criterion_04_pentagon_and_discriminant():
    t0 = time.perf_counter()
    A = [[1] * 5] + [list(c) for c in zip(*PENTAGON_SUPPORT)]
    printed = np.array([[1, 2], [-1, -3], [-2, -2], [2, 0], [0, 3]], dtype=object)
    B = np.array(gale_dual(A).tolist(), dtype=object)
    same_span = rank_exact(B.tolist()) == rank_exact(printed.tolist()) == rank_exact(np.hstack([B, printed]).tolist()) == 2
    vol = normalized_volume(A)
    img = raster_coamoeba_sampled(parse_polynomial(DISCRIMINANT, 2), 300)
    elapsed = time.perf_counter() - t0
    ok = same_span and vol == 11 and img.coverage >= 0.999 and elapsed < 60
    record(4, "pentagon dual span, volume 11, sampled discriminant coverage", ok,
           f"span {same_span}, volume {vol}, coverage {img.coverage:.5f}, {elapsed:.1f}s")


def test_criterion_05_circuit_counts(random_circuits):
    t0 = time.perf_counter()
    bad = []
    for f in random_circuits:
        k = len(enumerate_orders(f))
        c = circuit_count(support_matrix(f))
        if k != c:
            bad.append((str(f), k, c))
    elapsed = time.perf_counter() - t0
    ns = sorted({f.n for f in random_circuits})
    record(5, "order count equals circuit count on 200 random circuits", not bad and elapsed < 30,
           f"{len(bad)} mismatches, n in {ns}, {elapsed:.1f}s")


def test_criterion_06_roundtrip(random_circuits):
    bad, total = 0, 0
    for f in random_circuits:
        seen = set()
        orders = enumerate_orders(f)
        for p in orders:
            total += 1
            th = witness_theta(f, None, p)
            if not in_closed_complement(f, th) or cord(f, None, th) != p:
                bad += 1
            seen.add(tuple(a.principal().q for a in th))
        if len(seen) != len(orders):
            bad += 1
    record(6, "cord(witness(p)) = p with distinct witnesses", bad == 0, f"{total} orders, {bad} failures")


def test_criterion_07_property_suites():
    t0 = time.perf_counter()
    names = ["trinomial-union", "p-integrality", "monomial-invariance", "transform-equivariance"]
    results = run_suites(names, cases=10_000, seed=7, max_terms=7, max_n=3)
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{r.name} {r.failures}/{r.cases}" for r in results)
    ok = all(r.passed and r.cases >= 10_000 - r.skipped for r in results)
    record(7, "property suites on 10^4 random (f, theta)", ok, f"{detail}, {elapsed:.1f}s")


def test_criterion_08_base_points():
    rng = random.Random(88)
    bad = []
    for _ in range(100):
        f = random_circuit(rng, 2, exp_range=4, max_den=64)
        bp = base_points(f)
        vol = int(normalized_volume(support_matrix(f)))
        ok = (
            len(bp) == vol and not bp.rejected
            and all(in_closed_complement(f, th) for th in bp)
            and len(set(bp.orders)) == len(bp.orders)
            and set(bp.orders) == set(enumerate_orders(f))
        )
        if not ok:
            bad.append(str(f))
    record(8, "base points of 100 random planar circuits", not bad, f"{len(bad)} failures")


def test_criterion_09_raster_components():
    cases = [(TWO_TRIANGLE, 2, 2), (FIVE_ORDERS, 1, 5), ("1 + z1 + z2", 2, 1), (SQUARE, 2, 2)]
    got = []
    ok = True
    for text, n, expected in cases:
        f = parse_polynomial(text, n)
        k = complement_component_count(f, 400)
        ok &= k == expected == len(enumerate_orders(f))
        got.append(k)
    record(9, "raster complement components at 400^2", ok, f"counts {got}")


def test_criterion_10_simplex():
    rng = random.Random(10)
    bad = 0
    trials = 0
    while trials < 30:
        n = rng.randint(1, 3)
        f = random_polynomial(rng, n + 1, n, exp_range=3)
        if support_matrix(f).rank != n + 1:
            continue
        trials += 1
        cc = count_components(f)
        rep = orders_report(f)
        if cc.count != 1 or resolve_dual(f) is not None or rep["zonotope"]["generators"] or rep["count"] != 1:
            bad += 1
    code, out = cli_json("count", "1 + z1 + z2")
    ok = bad == 0 and code == 0 and out["count"] == 1
    record(10, "simplex supports have one component and an empty zonotope", ok, f"{trials} simplices, {bad} failures")


if __name__ == "__main__":
    import subprocess
    import sys

    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q", "-s"]))
