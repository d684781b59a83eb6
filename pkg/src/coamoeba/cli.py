"""Command line entry point: ``coamoeba <command> POLY [options]``.

Every command prints one JSON document on stdout. Exit status is 0 on
success, 1 for bad input, 2 when the request needs exact angles or is
otherwise unsupported, and 3 when a property suite fails.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle
from .checks import SUITES, run_suites
from .circuits import base_points, circuit_count
from .errors import ModeError, NonGenericError, NotInComplementError, UnsupportedError
from .gale import circuit_minors, gale_dual, is_circuit, normalized_volume
from .intlin import as_int_rows, maximal_minor_gcd
from .lpoly import Coefficient, LaurentPolynomial, ParseError, format_polynomial, parse_polynomial, support_matrix
from .ordermap import (
    ORDERS_SCHEMA,
    SCHEMA_VERSION,
    count_components,
    cord,
    orders_report,
    pi_rational_json,
    resolve_dual,
    witness_theta,
)
from .render import (
    complement_component_count,
    draw_overlays,
    raster_coamoeba_sampled,
    raster_lopsided,
    write_ppm,
    write_svg,
    zonotope_svg,
)
from .torus import classify, shell

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_SUITE = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    polynomial: str | None
    n: int | None
    mode: str
    resolution: int
    outputs: tuple[str, ...]
    seed: int


def infer_n(text: str) -> int:
    """Number of variables: the largest ``zk`` index, or 1 for a bare ``z``."""
    idx = [int(k) for k in re.findall(r"z(\d+)", text)]
    if idx:
        return max(idx)
    if re.search(r"z(?!\d)", text):
        return 1
    raise ParseError("cannot infer the number of variables; pass --n")


def parse_angle(text: str) -> Angle:
    """``pi/2``, ``-2*pi/3``, ``3pi/4`` and ``0`` are exact; other decimals are radians."""
    t = text.strip().replace(" ", "")
    m = re.fullmatch(r"([+-]?)(\d*)\*?pi(?:/(\d+))?", t)
    if m:
        sign, num, den = m.groups()
        q = Fraction(int(num) if num else 1, int(den) if den else 1)
        return Angle(q=-q if sign == "-" else q)
    try:
        return Angle(q=Fraction(t)) if re.fullmatch(r"[+-]?0+", t) else Angle.rad(float(t))
    except ValueError:
        raise ParseError(f"cannot read angle {text!r}") from None


def parse_vector(text: str) -> list[Angle]:
    return [parse_angle(x) for x in text.split(",") if x.strip()]


def parse_order(text: str) -> tuple[Fraction, ...]:
    """Order coordinates in the angle syntax; all must be exact."""
    out = []
    for a in parse_vector(text):
        if not a.exact:
            raise ModeError("order points must be exact multiples of pi")
        out.append(a.q)
    return tuple(out)


def angle_json(a: Angle) -> dict:
    return pi_rational_json(a.q) if a.exact else {"float": a.radians}


def _to_float(f: LaurentPolynomial) -> LaurentPolynomial:
    terms = tuple((e, Coefficient(float(c.modulus), Angle.rad(c.angle.radians))) for e, c in f.terms)
    return LaurentPolynomial(terms, f.n)


def load_polynomial(args) -> LaurentPolynomial:
    n = args.n or infer_n(args.poly)
    f = parse_polynomial(args.poly, n)
    if args.mode == "float":
        f = _to_float(f)
    elif args.mode == "exact" and not f.exact:
        raise ModeError("exact mode needs coefficient angles that are rational multiples of pi")
    return f


def _B(args):
    return as_int_rows(json.loads(args.B)) if getattr(args, "B", None) else None


# ---------------------------------------------------------------- commands

def cmd_gale(f: LaurentPolynomial, args) -> dict:
    A = support_matrix(f)
    if not A.full_dimensional:
        raise ValueError("Newton polytope is not full dimensional")
    out = {"A": A.tolist(), "n": A.n, "N": A.N, "m": A.m, "g_A": maximal_minor_gcd(A.matrix, A.n + 1)}
    if A.m == 0:
        out.update({"B": [], "g_B": 1, "is_gale": True, "is_circuit": False})
    else:
        D = resolve_dual(f, _B(args)) if _B(args) is not None else gale_dual(A)
        out.update({"B": D.tolist(), "g_B": maximal_minor_gcd(D.B, D.m), "is_gale": D.is_gale,
                    "is_circuit": is_circuit(A)})
        if out["is_circuit"]:
            out["circuit_minors"] = circuit_minors(A)
    try:
        out["volume"] = int(normalized_volume(A))
    except UnsupportedError:
        out["volume"] = None
    return out


def cmd_orders(f: LaurentPolynomial, args, open_variant: bool = False) -> dict:
    return orders_report(f, _B(args), open_variant=open_variant, witnesses=args.witness)


def cmd_cord(f: LaurentPolynomial, args) -> dict:
    theta = parse_vector(args.theta)
    mem = classify(f, theta)
    out = {
        "theta": [angle_json(t) for t in theta],
        "gap": angle_json(mem.gap),
        "in_lopsided_coamoeba": mem.in_lopsided_coamoeba,
        "in_closed_complement": mem.in_closed_complement,
        "indeterminate": mem.indeterminate,
    }
    if not mem.in_closed_complement:
        raise NotInComplementError("theta is not in the complement of the closed lopsided coamoeba")
    o = cord(f, _B(args), theta)
    out["order"] = o.to_json()
    return out


def cmd_witness(f: LaurentPolynomial, args) -> dict:
    p = parse_order(args.order)
    th = witness_theta(f, _B(args), p)
    return {"order": [pi_rational_json(x) for x in p], "theta": [angle_json(a) for a in th]}


def cmd_basepoints(f: LaurentPolynomial, args) -> dict:
    bp = base_points(f, strict=args.strict)
    return {
        "expected": bp.expected,
        "complete": bp.complete,
        "generic": bp.generic,
        "classes": [list(c) for c in bp.system.classes],
        "system": {"M": [list(r) for r in bp.system.exponent_matrix],
                   "psi": [angle_json(a) for a in bp.system.rhs_angles]},
        "points": [{"theta": [angle_json(a) for a in th], "order": o.to_json()} for th, o in zip(bp.points, bp.orders)],
        "rejected": [[angle_json(a) for a in th] for th in bp.rejected],
    }


def cmd_count(f: LaurentPolynomial, args) -> dict:
    cc = count_components(f, _B(args))
    out = {"count": cc.count, "bijective": cc.bijective, "g_A": cc.g_A, "g_B": cc.g_B, "is_gale": cc.is_gale}
    A = support_matrix(f)
    if A.m == 1 and is_circuit(A):
        out["circuit_count"] = circuit_count(A)
    return out


def cmd_shell(f: LaurentPolynomial, args) -> dict:
    return {"families": [{"pair": list(h.pair), "normal": list(h.normal), "offset": angle_json(h.offset)}
                         for h in shell(f)]}


def cmd_render(f: LaurentPolynomial, args) -> dict:
    out: dict = {"resolution": args.resolution}
    if args.sampled:
        img = raster_coamoeba_sampled(f, args.resolution)
        out["coverage"] = img.coverage
        out["info"] = img.info
    else:
        img = raster_lopsided(f, args.resolution)
        out["complement_components"] = complement_component_count(f, args.resolution)
    layers = ["closed"]
    if args.overlay:
        img = draw_overlays(img, f)
        layers.append("shell")
    if args.out:
        out["ppm"] = str(write_ppm(img, args.out, layers))
    if args.svg:
        out["svg"] = str(write_svg(zonotope_svg(f, _B(args)), args.svg))
    return out


def cmd_check(f: LaurentPolynomial | None, args) -> dict:
    names = args.suite or None
    results = run_suites(names, f, cases=args.cases, seed=args.seed)
    return {"seed": args.seed, "passed": all(r.passed for r in results), "suites": [r.to_json() for r in results]}


COMMANDS = {
    "gale": cmd_gale,
    "orders": cmd_orders,
    "orders-open": lambda f, a: cmd_orders(f, a, open_variant=True),
    "cord": cmd_cord,
    "witness": cmd_witness,
    "basepoints": cmd_basepoints,
    "count": cmd_count,
    "shell": cmd_shell,
    "render": cmd_render,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coamoeba", description="Lopsided coamoebas and their complement components.")
    p.add_argument("--schema", action="store_true", help="print the JSON schema for order reports and exit")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, help_, poly=True):
        s = sub.add_parser(name, help=help_)
        if poly:
            s.add_argument("poly", help='polynomial, e.g. "1 + z1 + z2 + i*z1*z2"')
        else:
            s.add_argument("poly", nargs="?", help="polynomial (random instances when omitted)")
        s.add_argument("--n", type=int, help="number of variables (inferred from the text by default)")
        s.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
        s.add_argument("--seed", type=int, default=0)
        return s

    for name in ("gale", "orders", "orders-open", "cord", "witness", "count"):
        s = add(name, {"gale": "point configuration and dual matrix",
                       "orders": "order points (image of the order map)",
                       "orders-open": "order points of the closed complement",
                       "cord": "order of the component containing --theta",
                       "witness": "a point of the component with order --order",
                       "count": "number of complement components"}[name])
        s.add_argument("--B", help="dual matrix as JSON rows, e.g. '[[2],[-5],[3]]'")
        if name in ("orders", "orders-open"):
            s.add_argument("--witness", action="store_true", help="add a witness point per order")
        if name == "cord":
            s.add_argument("--theta", required=True, help="comma separated angles, e.g. '-2pi/3,0'")
        if name == "witness":
            s.add_argument("--order", required=True, help="comma separated exact order coordinates, e.g. '3pi/2'")
    s = add("basepoints", "one point per complement component of a circuit")
    s.add_argument("--strict", action="store_true", help="fail on non-generic coefficients")
    add("shell", "hyperplane families of the binomials")
    s = add("render", "raster images and zonotope drawings")
    s.add_argument("--resolution", type=int, default=400)
    s.add_argument("--out", help="P6 pixmap output path")
    s.add_argument("--svg", help="zonotope drawing output path")
    s.add_argument("--sampled", action="store_true", help="sample the coamoeba instead of the lopsided set")
    s.add_argument("--overlay", action="store_true", help="draw shell lines")
    s.add_argument("--B", help="dual matrix as JSON rows")
    s = add("check", "property suites", poly=False)
    s.add_argument("--suite", action="append", choices=sorted(SUITES), help="suite to run (repeatable; default all)")
    s.add_argument("--cases", type=int, default=200)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.schema:
        json.dump({"orders": ORDERS_SCHEMA, "version": SCHEMA_VERSION}, stdout, indent=2)
        stdout.write("\n")
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    config = RunConfig(args.command, args.poly, args.n, args.mode, getattr(args, "resolution", 0),
                       tuple(x for x in (getattr(args, "out", None), getattr(args, "svg", None)) if x), args.seed)
    try:
        f = load_polynomial(args) if config.polynomial else None
        result = COMMANDS[config.command](f, args)
    except ModeError as exc:
        return _fail(stdout, EXIT_UNSUPPORTED, exc, getattr(exc, "diagnostics", None))
    except UnsupportedError as exc:
        return _fail(stdout, EXIT_UNSUPPORTED, exc)
    except (ParseError, NotInComplementError, NonGenericError, ValueError, json.JSONDecodeError) as exc:
        return _fail(stdout, EXIT_INPUT, exc)
    if config.polynomial:
        result = {"command": config.command, "polynomial": format_polynomial(f), **result}
    json.dump(result, stdout, indent=2, default=_json_default)
    stdout.write("\n")
    if config.command == "check" and not result["passed"]:
        return EXIT_SUITE
    return EXIT_OK


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Angle):
        return angle_json(x)
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return str(x)


def _fail(stdout, code: int, exc: Exception, diagnostics=None) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if diagnostics:
        payload["diagnostics"] = diagnostics
    json.dump(payload, stdout, indent=2)
    stdout.write("\n")
    print(f"coamoeba: {exc}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
