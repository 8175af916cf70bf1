"""Command-line front end.

Configurations are JSON documents ``{"matrix": [[...], ...], "labels": [...]}``
with one row per coordinate, or an inline matrix such as ``"1,0,1;0,1,1"``
(rows separated by semicolons). Results are JSON on standard output with
rationals written as ``"p/q"`` strings.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import Polynomial
from .geometry import direction_family, shifted_points, short_affine_regular, zonotope_points
from .matroid import PreconditionError, VectorConfig, cocircuits, is_totally_unimodular
from .pspace import central_space, internal_space, q_basis
from .splines import box_spline, multispline_piece, partition_count
from .toddcalc import f_z, interpolate_internal
from .verify import SUITES, check_kp, check_residue_1d, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


# serialization --------------------------------------------------------------

def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def poly_doc(p: Polynomial) -> dict:
    return {
        "dim": p.dim,
        "terms": [{"exponent": list(e), "coefficient": rational_str(c)} for e, c in p.sorted_terms()],
        "text": p.to_str(),
    }


def parse_poly_doc(doc: dict) -> Polynomial:
    return Polynomial(doc["dim"], {tuple(t["exponent"]): parse_rational(t["coefficient"])
                                   for t in doc["terms"]})


def point_doc(u: Sequence) -> list:
    return [int(a) if Fraction(a).denominator == 1 else rational_str(a) for a in u]


def points_doc(points) -> list:
    return [point_doc(u) for u in sorted(points)]


def _jsonify(obj):
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, Polynomial):
        return poly_doc(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


# input ----------------------------------------------------------------------

def load_config(source: str) -> VectorConfig:
    path = Path(source)
    labels = None
    if path.suffix == ".json" or path.exists():
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read configuration {source}: {exc}") from exc
        if not isinstance(doc, dict) or "matrix" not in doc:
            raise UsageError("configuration needs a 'matrix' field")
        rows = doc["matrix"]
        labels = doc.get("labels")
    else:
        try:
            rows = [[int(v) for v in r.split(",")] for r in source.split(";")]
        except ValueError as exc:
            raise UsageError(f"cannot parse inline matrix {source!r}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError("matrix rows must be nonempty and of equal length")
    if not all(isinstance(v, int) for r in rows for v in r):
        raise UsageError("matrix entries must be integers")
    if labels is not None and len(labels) != len(rows[0]):
        raise UsageError("one label per column is required")
    return VectorConfig.from_matrix(rows, labels)


def parse_vector(text: str, dim: int | None = None) -> tuple:
    try:
        vec = tuple(Fraction(v) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse vector {text!r}") from exc
    if dim is not None and len(vec) != dim:
        raise UsageError(f"vector {text!r} must have {dim} entries")
    return vec


def parse_lattice_point(text: str, dim: int) -> tuple[int, ...]:
    vec = parse_vector(text, dim)
    if any(v.denominator != 1 for v in vec):
        raise UsageError(f"{text!r} is not a lattice point")
    return tuple(int(v) for v in vec)


def _direction(args, X: VectorConfig):
    return parse_vector(args.w, X.dim) if getattr(args, "w", None) else short_affine_regular(X)


# subcommands ----------------------------------------------------------------------

def cmd_check_tu(args, X):
    return {"totally_unimodular": is_totally_unimodular(X), "spans": X.spans()}


def cmd_bases(args, X):
    return {"bases": [
        {"basis": list(B.indices), "externally_active": list(B.ext_active), "q": poly_doc(q)}
        for B, q in q_basis(X)
    ]}


def cmd_cocircuits(args, X):
    return {"cocircuits": sorted(list(c) for c in cocircuits(X))}


def _graded_doc(space):
    return {"dims": space.dims(), "dimension": space.dimension,
            "basis": [[poly_doc(p) for p in space.basis(k)] for k in range(len(space.pieces))]}


def cmd_pspace(args, X):
    return _graded_doc(central_space(X))


def cmd_internal(args, X):
    return _graded_doc(internal_space(X))


def cmd_zonotope(args, X):
    points, interior = zonotope_points(X)
    w = _direction(args, X)
    return {"points": points_doc(points), "interior": points_doc(interior),
            "w": point_doc(w), "shifted": points_doc(shifted_points(X, w))}


def cmd_fz(args, X):
    if args.z:
        zs = [parse_lattice_point(z, X.dim) for z in args.z]
    elif args.shifted:
        zs = list(shifted_points(X, _direction(args, X)))
    else:
        zs = list(zonotope_points(X)[1])
    return {"fz": [{"z": list(z), "f": poly_doc(f_z(X, z))} for z in sorted(zs)]}


def cmd_interpolate(args, X):
    try:
        raw = json.loads(Path(args.values).read_text()) if Path(args.values).exists() \
            else json.loads(args.values)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse values: {exc}") from exc
    values = {parse_lattice_point(k, X.dim): parse_rational(v) for k, v in raw.items()}
    p = interpolate_internal(X, values)
    # report the achieved values as a check
    bs = box_spline(X)
    w = direction_family(X, 1)[0]
    achieved = {",".join(map(str, z)): rational_str(bs.limit_value(p, z, w))
                for z in zonotope_points(X)[1]}
    return {"p": poly_doc(p), "values": achieved}


def cmd_box_eval(args, X):
    u = parse_vector(args.u, X.dim)
    bs = box_spline(X)
    if args.toward:
        value = bs.limit_piece(u, parse_vector(args.toward, X.dim)).evaluate(u)
    else:
        value = bs.value(u)
    return {"u": point_doc(u), "value": rational_str(value)}


def cmd_count(args, X):
    u = parse_lattice_point(args.u, X.dim)
    return {"u": list(u), "count": partition_count(X, u)}


def cmd_chamber_piece(args, X):
    u = parse_vector(args.u, X.dim)
    toward = parse_vector(args.toward, X.dim) if args.toward else None
    piece = multispline_piece(X, u, toward, cross_check=not args.no_cross_check)
    return {"chamber": list(piece.key), "p": poly_doc(piece.poly),
            "value": rational_str(piece.poly.evaluate(u))}


def cmd_verify(args, X):
    reports = []
    if args.residue:
        try:
            a, b = (int(v) for v in args.residue.split(","))
        except ValueError as exc:
            raise UsageError(f"--residue expects a,b, got {args.residue!r}") from exc
        reports.append(check_residue_1d(a, b))
    if args.kp:
        for pair in args.kp:
            if pair.count(":") != 1:
                raise UsageError(f"--kp expects z:u, got {pair!r}")
            z_text, u_text = pair.split(":")
            reports.append(check_kp(X, parse_lattice_point(z_text, X.dim),
                                    parse_lattice_point(u_text, X.dim)))
    if X is not None and (args.suite or not reports):
        reports.extend(run_suite(X, args.suite or ["all"]))
    failed = any(r.status == "fail" for r in reports)
    return {"reports": [r.to_json() for r in reports], "failed": failed}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latticetodd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, config=True):
        p = sub.add_parser(name, help=help_text)
        if config:
            p.add_argument("config", help="JSON file or inline matrix 'r1;r2;...'")
        p.set_defaults(func=func)
        return p

    add("check-tu", cmd_check_tu, "total unimodularity verdict")
    add("bases", cmd_bases, "bases with external activity and Q_B")
    add("cocircuits", cmd_cocircuits, "cocircuits as column index sets")
    add("pspace", cmd_pspace, "graded basis of the central space")
    add("internal", cmd_internal, "graded basis of the internal space")
    p = add("zonotope", cmd_zonotope, "lattice, interior and shifted points")
    p.add_argument("--w", help="affine regular vector (default: chosen short one)")
    p = add("fz", cmd_fz, "interpolation polynomials f_z")
    p.add_argument("--z", action="append", help="lattice point, repeatable")
    p.add_argument("--shifted", action="store_true", help="all z in Z(X, w)")
    p.add_argument("--w", help="affine regular vector for --shifted")
    p = add("interpolate", cmd_interpolate, "p in the internal space with prescribed values")
    p.add_argument("--values", required=True, help='JSON {"z1,z2": "p/q", ...} or a file')
    p = add("box-eval", cmd_box_eval, "evaluate B_X")
    p.add_argument("--u", required=True)
    p.add_argument("--toward", help="direction for a one-sided limit at non-generic u")
    p = add("count", cmd_count, "vector partition function")
    p.add_argument("--u", required=True)
    p = add("chamber-piece", cmd_chamber_piece, "polynomial piece of T_X on a chamber")
    p.add_argument("--u", required=True)
    p.add_argument("--toward", help="direction into the chamber when u is on a wall")
    p.add_argument("--no-cross-check", action="store_true")
    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("config", nargs="?")
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"])
    p.add_argument("--residue", help="a,b for the univariate residue check")
    p.add_argument("--kp", action="append", help="z:u pairs such as '1,1:3,2'")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        X = load_config(args.config) if getattr(args, "config", None) else None
        if X is None and args.command != "verify":
            raise UsageError("a configuration is required")
        if X is None and not args.residue:
            raise UsageError("verify needs a configuration or --residue")
        doc = args.func(args, X)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, KeyError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    json.dump(_jsonify(doc), sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")
    return EXIT_FAIL if doc.get("failed") else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
