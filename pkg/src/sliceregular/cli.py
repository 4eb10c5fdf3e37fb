"""Batch command-line interface: series algebra, slice operations, Mobius
tools, and the theorem verification harness, with JSON on stdout.

Exit codes: 0 on success/pass, 1 when a verification reports violations,
2 on usage or domain errors (which emit a structured error object).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .quaternion import Quaternion, UnitImaginary, orthogonal_unit
from .power_series import QSeries, coefficients_by_contour
from .star_algebra import regular_conjugate, regular_reciprocal, star_product, symmetrization
from .slice_ops import extend, split
from .mobius import MobiusMap, cayley_map, dieudonne_det, disk_map
from . import theorems


# ---------------------------------------------------------------------------
# JSON output with floats at 17 significant digits (exact round-trip).

def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite float in JSON output")
    s = format(float(x), ".17g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def dumps(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


# ---------------------------------------------------------------------------
# Argument parsing helpers.

def _parse_quaternion(text: str) -> Quaternion:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected a quaternion as 'w,x,y,z', got {text!r}")
    return Quaternion(*[float(p) for p in parts])


def _parse_unit(text: str) -> UnitImaginary:
    parts = [float(p) for p in text.split(",")]
    if len(parts) == 3:
        return UnitImaginary(*parts)
    if len(parts) == 4:
        if parts[0] != 0.0:
            raise ValueError("an imaginary unit must have zero real part")
        return UnitImaginary(*parts[1:])
    raise ValueError(f"expected an imaginary unit as 'x,y,z', got {text!r}")


def _load_series(path: str) -> QSeries:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {path}: {exc}") from exc
    return QSeries.from_json_dict(obj)


def _split_pair_json(pair) -> dict:
    return {
        "I": pair.I.to_list(),
        "J": pair.J.to_list(),
        "F": [list(map(float, row)) for row in pair.F],
        "G": [list(map(float, row)) for row in pair.G],
    }


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns the process exit code.

def _cmd_eval(args) -> int:
    f = _load_series(args.series)
    _emit(f.evaluate(_parse_quaternion(args.at)).to_list())
    return 0


def _cmd_star(args) -> int:
    f, g = _load_series(args.f), _load_series(args.g)
    _emit(star_product(f, g).to_json_dict())
    return 0


def _cmd_conj(args) -> int:
    _emit(regular_conjugate(_load_series(args.series)).to_json_dict())
    return 0


def _cmd_symm(args) -> int:
    _emit(symmetrization(_load_series(args.series)).to_json_dict())
    return 0


def _cmd_recip(args) -> int:
    _emit(regular_reciprocal(_load_series(args.series), args.degree).to_json_dict())
    return 0


def _cmd_split(args) -> int:
    f = _load_series(args.series)
    unit_i = _parse_unit(args.slice)
    unit_j = _parse_unit(args.ortho) if args.ortho else orthogonal_unit(unit_i)
    _emit(_split_pair_json(split(f, unit_i, unit_j)))
    return 0


def _cmd_extend(args) -> int:
    f = _load_series(args.series)
    unit_i = _parse_unit(args.from_slice)
    q = _parse_quaternion(args.at)
    _emit(extend(f.evaluate, unit_i, q).to_list())
    return 0


def _cmd_coeffs(args) -> int:
    f = _load_series(args.samples_of)
    unit_i = _parse_unit(args.slice)
    recovered = coefficients_by_contour(f.evaluate, unit_i, args.radius, args.nmax, args.nodes)
    _emit({"degree": args.nmax, "coeffs": [c.to_list() for c in recovered]})
    return 0


def _cmd_mobius(args) -> int:
    if args.mobius_cmd == "det":
        _emit({"det": dieudonne_det(*(_parse_quaternion(v) for v in (args.a, args.b, args.c, args.d)))})
        return 0
    if args.mobius_cmd == "apply":
        m = MobiusMap(*(_parse_quaternion(v) for v in (args.a, args.b, args.c, args.d)))
        _emit(m.apply(_parse_quaternion(args.at)).to_list())
        return 0
    if args.mobius_cmd == "cayley":
        m = cayley_map(_parse_quaternion(args.w0))
    else:  # disk
        m = disk_map(args.a0)
    if args.at is not None:
        _emit(m.apply(_parse_quaternion(args.at)).to_list())
    else:
        _emit({"a": m.a.to_list(), "b": m.b.to_list(), "c": m.c.to_list(), "d": m.d.to_list(), "det": m.det})
    return 0


def _cmd_verify(args) -> int:
    names = {
        "bc": "borel-caratheodory",
        "weak-bohr": "weak-bohr",
        "sharp-bohr": "sharp-bohr",
        "coeff-bounds": "coeff-bounds",
        "radius": "bohr-radius",
    }
    report = theorems.run_verification(
        names[args.verify_cmd],
        trials=args.trials,
        seed=args.seed,
        generator=args.generator,
        tol=args.tol,
        samples=args.samples,
        rhos=tuple(args.rho) if args.rho else (0.25, 0.5, 0.75),
    )
    _emit(report.to_json_dict())
    return 0 if report.passed() else 1


def _cmd_witness(args) -> int:
    w = theorems.sharpness_witness(_parse_quaternion(args.q0), a=args.a, c=args.c)
    _emit(w.to_json_dict())
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sliceregular",
        description="Quaternionic power-series algebra and theorem verification (JSON output).",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("eval", help="evaluate a series at a point")
    s.add_argument("series")
    s.add_argument("--at", required=True, metavar="w,x,y,z")
    s.set_defaults(func=_cmd_eval)

    s = sub.add_parser("star", help="regular product of two series")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=_cmd_star)

    s = sub.add_parser("conj", help="regular conjugate")
    s.add_argument("series")
    s.set_defaults(func=_cmd_conj)

    s = sub.add_parser("symm", help="symmetrization f * f^c")
    s.add_argument("series")
    s.set_defaults(func=_cmd_symm)

    s = sub.add_parser("recip", help="regular reciprocal truncated at a degree")
    s.add_argument("series")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=_cmd_recip)

    s = sub.add_parser("split", help="split a series over a slice frame")
    s.add_argument("series")
    s.add_argument("--slice", required=True, metavar="x,y,z")
    s.add_argument("--ortho", metavar="x,y,z")
    s.set_defaults(func=_cmd_split)

    s = sub.add_parser("extend", help="regular extension of a slice restriction")
    s.add_argument("series")
    s.add_argument("--from-slice", dest="from_slice", required=True, metavar="x,y,z")
    s.add_argument("--at", required=True, metavar="w,x,y,z")
    s.set_defaults(func=_cmd_extend)

    s = sub.add_parser("coeffs", help="recover coefficients by contour quadrature")
    s.add_argument("--samples-of", dest="samples_of", required=True)
    s.add_argument("--slice", required=True, metavar="x,y,z")
    s.add_argument("--radius", type=float, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--nodes", type=int, required=True)
    s.set_defaults(func=_cmd_coeffs)

    s = sub.add_parser("mobius", help="fractional linear transformations")
    msub = s.add_subparsers(dest="mobius_cmd", required=True)
    m = msub.add_parser("det", help="Dieudonne determinant")
    for name in "abcd":
        m.add_argument(f"--{name}", required=True, metavar="w,x,y,z")
    m.set_defaults(func=_cmd_mobius)
    m = msub.add_parser("apply", help="apply (qa+b)^(-1)(qc+d)")
    for name in "abcd":
        m.add_argument(f"--{name}", required=True, metavar="w,x,y,z")
    m.add_argument("--at", required=True, metavar="w,x,y,z")
    m.set_defaults(func=_cmd_mobius)
    m = msub.add_parser("cayley", help="half-space-to-ball map centered at w0")
    m.add_argument("--w0", required=True, metavar="w,x,y,z")
    m.add_argument("--at", metavar="w,x,y,z")
    m.set_defaults(func=_cmd_mobius)
    m = msub.add_parser("disk", help="unit-ball automorphism with real parameter")
    m.add_argument("--a0", type=float, required=True)
    m.add_argument("--at", metavar="w,x,y,z")
    m.set_defaults(func=_cmd_mobius)

    s = sub.add_parser("verify", help="run a theorem check over a generated corpus")
    vsub = s.add_subparsers(dest="verify_cmd", required=True)
    for name in ("bc", "weak-bohr", "sharp-bohr", "coeff-bounds", "radius"):
        v = vsub.add_parser(name)
        v.add_argument("--trials", type=int, default=100)
        v.add_argument("--seed", type=int, default=0)
        v.add_argument("--tol", type=float, default=1e-9)
        v.add_argument("--samples", type=int, default=256)
        v.add_argument("--generator", choices=("g1", "g2"))
        if name == "bc":
            v.add_argument("--rho", type=float, action="append")
        else:
            v.set_defaults(rho=None)
        v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("witness", help="sharpness witness at a point beyond radius 1/3")
    s.add_argument("--q0", required=True, metavar="w,x,y,z")
    s.add_argument("--a", type=float, help="force the geometric-ratio parameter")
    s.add_argument("--c", type=float, help="force the scale parameter")
    s.set_defaults(func=_cmd_witness)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        _emit({"error": {"type": "domain", "message": str(exc)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
