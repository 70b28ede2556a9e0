"""
Command-line front end.

    ccomplex validate FILE
    ccomplex potential FILE [--method packed|bareiss]
    ccomplex signature FILE --omega 1/2[,1/3] [--omega ...] [--tol X]
    ccomplex grid FILE --grid Q [--tol X]
    ccomplex verify FILE [--trials N] [--seed S]
    ccomplex skip-lk FILE

Results go to stdout as JSON (or CSV for signature/grid with --format csv).
Failures exit with status 1 and a JSON error object on stderr; usage errors
exit with status 2.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .model import CComplexData, SchemaError, ValidationError, validate
from .moves import verify_invariance
from .potential import conway_potential
from .signature import (DEFAULT_ZERO_TOL, SigNull, TorusPoint,
                        signature_nullity, torus_grid)
from .skiplink import (LinkDiagram, MalformedDiagramError, is_pairwise_unlinked,
                       linking_matrix, load_skip_fixture)


class CommandFailed(Exception):
    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.payload = {"error": kind, "message": message, **extra}


def _omega(text: str) -> tuple[Fraction, ...]:
    try:
        angles = tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad angle list {text!r}")
    for a in angles:
        if a.denominator == 1:
            raise argparse.ArgumentTypeError(
                f"angle {a} gives the excluded coordinate 1")
    return angles


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _grid_q(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if q < 2:
        raise argparse.ArgumentTypeError("grid resolution must be at least 2")
    return q


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccomplex",
        description="Invariants of colored links from C-complex data.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("validate", help="check a C-complex or diagram file")
    p.add_argument("file")

    p = sub.add_parser("potential", help="Conway potential function")
    p.add_argument("file")
    p.add_argument("--method", choices=("packed", "bareiss"),
                   default="packed", help="determinant route")

    for name, helptext in (("signature", "signature and nullity at points"),
                           ("grid", "signature and nullity on a grid")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        if name == "signature":
            p.add_argument("--omega", type=_omega, action="append",
                           required=True, metavar="P/Q[,P/Q...]",
                           help="rational angles; w_j = exp(2 pi i p_j/q_j)")
        else:
            p.add_argument("--grid", type=_grid_q, required=True, metavar="Q")
        p.add_argument("--tol", type=_positive_float, default=DEFAULT_ZERO_TOL,
                       help="zero-eigenvalue threshold (default %(default)g)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="run the move-invariance harness")
    p.add_argument("file")
    p.add_argument("--trials", type=_nonneg, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_ZERO_TOL)

    p = sub.add_parser("skip-lk", help="linking numbers of a diagram fixture")
    p.add_argument("file")
    return parser


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CommandFailed("io", f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise CommandFailed("json", f"{path}: {exc}")
    if not isinstance(data, dict):
        raise CommandFailed("schema", f"{path}: top level must be an object")
    return data


def _load(path: str) -> CComplexData:
    data = _read_json(path)
    try:
        return CComplexData.from_json(data)
    except (SchemaError, ValueError) as exc:
        raise CommandFailed("schema", str(exc))


def _dump(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def cmd_validate(args, out) -> int:
    data = _read_json(args.file)
    if "components" in data:
        # a link diagram (possibly a fixture) rather than a C-complex
        fx = None
        try:
            if "expected_linking" in data:
                fx = load_skip_fixture(Path(args.file))
            else:
                LinkDiagram.from_json(data)
        except (SchemaError, MalformedDiagramError, ValueError) as exc:
            raise CommandFailed("diagram", str(exc))
        if fx is not None and not fx.check():
            raise CommandFailed("diagram", "linking numbers disagree with"
                                " the fixture's expectations")
        _dump({"valid": True}, out)
        return 0
    c = _load(args.file)
    report = validate(c)
    _dump(report.to_json(), out)
    if not report.ok:
        raise CommandFailed("validation", "C-complex data is invalid",
                            violations=report.to_json()["violations"])
    return 0


def cmd_potential(args, out) -> int:
    res = conway_potential(_load(args.file), method=args.method)
    _dump(res.to_json(), out)
    return 0


def _emit_points(rows: list[tuple[TorusPoint, SigNull]], n: int, fmt: str,
                 out, integer_p: int | None = None) -> None:
    if fmt == "json":
        for w, sn in rows:
            _dump({"omega": w.labels(), **sn.to_json()}, out)
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"p_{j}" for j in range(1, n + 1)] + ["sigma", "eta"])
    for w, sn in rows:
        if integer_p is not None:
            ps = [str(a * integer_p) for a in w.angles]
        else:
            ps = w.labels()
        writer.writerow(ps + [sn.signature, sn.nullity])


def cmd_signature(args, out) -> int:
    c = _load(args.file)
    rows = []
    for angles in args.omega:
        if len(angles) != c.n:
            raise CommandFailed("usage", f"--omega needs {c.n} angle(s),"
                                f" got {len(angles)}")
        w = TorusPoint.from_angles(angles)
        rows.append((w, signature_nullity(c, w, args.tol)))
    _emit_points(rows, c.n, args.format, out)
    return 0


def cmd_grid(args, out) -> int:
    c = _load(args.file)
    rows = torus_grid(c, args.grid, args.tol)
    _emit_points(rows, c.n, args.format, out, integer_p=args.grid)
    return 0


def cmd_verify(args, out) -> int:
    c = _load(args.file)
    report = verify_invariance(c, trials=args.trials, seed=args.seed,
                               tol=args.tol)
    _dump(report.to_json(), out)
    if not report.ok:
        raise CommandFailed("invariance", f"{len(report.failures)} check(s)"
                            " failed", seed=args.seed)
    return 0


def cmd_skip_lk(args, out) -> int:
    _read_json(args.file)  # surfaces io/json problems uniformly
    try:
        fx = load_skip_fixture(Path(args.file))
    except (SchemaError, MalformedDiagramError, KeyError) as exc:
        raise CommandFailed("diagram", str(exc))
    lk = linking_matrix(fx.diagram)
    _dump({"name": fx.name,
           "components": fx.diagram.component_ids,
           "linking": lk.tolist(),
           "pairwise_unlinked": is_pairwise_unlinked(fx.diagram),
           "matches_expected": fx.check()}, out)
    if not fx.check():
        raise CommandFailed("diagram", "linking numbers disagree with the"
                            " fixture's expectations")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "potential": cmd_potential,
    "signature": cmd_signature,
    "grid": cmd_grid,
    "verify": cmd_verify,
    "skip-lk": cmd_skip_lk,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except CommandFailed as exc:
        _dump(exc.payload, err)
        return 2 if exc.payload["error"] == "usage" else 1
    except ValidationError as exc:
        _dump({"error": "validation", "message": str(exc),
               "violations": exc.report.to_json()["violations"]}, err)
        return 1
    except (ValueError, ArithmeticError) as exc:
        _dump({"error": "computation", "message": str(exc)}, err)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
