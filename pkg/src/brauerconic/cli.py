"""Command-line entry point.

Exit codes: 0 success or Equal, 2 Unknown, 3 NotEqualOverPlane, 4 input
error, 5 failed verification or internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .brclass import BrauerError, class_equal_certified
from .certificate import certify_cot, dumps, verify
from .conics import ConicError, ConicPoint, conic_symbol, parametrize, point_search
from .parse import ParseError, parse_class, parse_curve, parse_expr, parse_form, parse_point, to_ratfun
from .poly import PolyError
from .residues import residue_table
from .symbols import SymbolError

EXIT_OK = 0
EXIT_UNKNOWN = 2
EXIT_NOT_EQUAL = 3
EXIT_INPUT = 4
EXIT_INTERNAL = 5

_VERDICT_EXIT = {"Equal": EXIT_OK, "Rational": EXIT_OK, "Unknown": EXIT_UNKNOWN, "NotEqualOverPlane": EXIT_NOT_EQUAL}


def default_height_bound() -> int:
    raw = os.environ.get("BRAUER_HEIGHT_BOUND")
    if raw is None:
        return 50
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"BRAUER_HEIGHT_BOUND must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("BRAUER_HEIGHT_BOUND must be nonnegative")
    return n


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def cmd_residues(args) -> int:
    c = parse_class(args.cls)
    rows = residue_table(c)
    ramified = [r for r in rows if not r.trivial]
    if args.json:
        _emit({"rows": [r.to_dict() for r in rows], "profile": [r.to_dict() for r in ramified]})
        return EXIT_OK
    for r in rows:
        mark = "trivial" if r.trivial else "nontrivial"
        note = ""
        if r.trivial and str(r.value) != "1":
            note = f" ({r.value} is a square in Q(i))"
        print(f"{r.divisor} = 0: class of {r.value} in Q(i)({r.divisor.residue_var})*, {mark}{note}")
    if ramified:
        print("ramified along: " + ", ".join(f"{r.divisor} = 0" for r in ramified))
    else:
        print("unramified: every residue is trivial")
    return EXIT_OK


def cmd_compare(args) -> int:
    x, y = parse_class(args.x), parse_class(args.y)
    curve, point = parse_curve(args.curve), parse_point(args.point)
    res = class_equal_certified(x, y, curve, point, args.height_bound)
    _emit(res.to_dict())
    return _VERDICT_EXIT[res.verdict]


def cmd_conic_symbol(args) -> int:
    q = parse_form(args.form)
    print(conic_symbol(q))
    return EXIT_OK


def _parse_conic_point(text: str) -> ConicPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError("a point needs three comma-separated coordinates", 0)
    return ConicPoint(tuple(to_ratfun(parse_expr(p)) for p in parts))


def cmd_conic_param(args) -> int:
    q = parse_form(args.form)
    if args.point is not None:
        pt = _parse_conic_point(args.point)
    else:
        pt = point_search(q, args.height_bound)
        if pt is None:
            print(f"no point of height <= {args.height_bound} found", file=sys.stderr)
            return EXIT_UNKNOWN
    par = parametrize(q, pt)
    _emit(par.to_dict())
    return EXIT_OK


def cmd_certify(args) -> int:
    cert = certify_cot(args.path, args.height_bound, args.target)
    text = dumps(cert)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return _VERDICT_EXIT.get(cert["conclusion"], EXIT_INTERNAL)


def cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            cert = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    problems = verify(cert)
    if problems:
        for p in problems:
            print(f"FAIL {p}")
        return EXIT_INTERNAL
    print(f"OK certificate verified (conclusion {cert.get('conclusion')})")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as Unknown
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="brauerconic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def bound(p):
        p.add_argument("--height-bound", type=int, default=None, help="point-search bound (default 50)")

    p = sub.add_parser("residues", help="residue table of a class")
    p.add_argument("cls", help='e.g. "sym(u, v) + sym(u, 1-u)"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("compare", help="certified equality of two classes")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--curve", required=True, help="e.g. v=1-u")
    p.add_argument("--point", required=True, help="e.g. u=0")
    bound(p)
    p.set_defaults(func=cmd_compare)

    conic = sub.add_parser("conic", help="conics given by ternary forms")
    csub = conic.add_subparsers(dest="conic_command", required=True, parser_class=_Parser)
    p = csub.add_parser("symbol", help="quaternion symbol of a form")
    p.add_argument("form", help='e.g. "S^2 - u*T^2 - v*R^2"')
    p.set_defaults(func=cmd_conic_symbol)
    p = csub.add_parser("param", help="rational parametrization through a point")
    p.add_argument("form")
    p.add_argument("--point", help='e.g. "1, i, 0"; searched for when omitted')
    bound(p)
    p.set_defaults(func=cmd_conic_param)

    p = sub.add_parser("certify-cot", help="rationality certificate for the built-in conic bundle")
    p.add_argument("--path", choices=("main", "remark"), default="main")
    p.add_argument("--target", default=None, help="class to compare against (default sym(u, v))")
    p.add_argument("--output", "-o", default=None)
    bound(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        if getattr(args, "height_bound", 0) is None:
            args.height_bound = default_height_bound()
        return args.func(args)
    except (ParseError, PolyError, SymbolError, ConicError, BrauerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
