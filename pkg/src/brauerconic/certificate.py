"""Rationality certificate for the conic bundle

    v(v^2 - 1) S^2 - u(u^2 - 1) T^2 + uv(u^2 - v^2) R^2 = 0

over Q(i)(u, v), and an independent checker for it.

The bundle is rational once its symbol alpha equals (u, v): the conic of
(u, v) is S^2 - u T^2 - v R^2, whose total space is the affine 3-space chart
``s^2 - u t^2 - v = 1``.  The certificate records every step of the equality
proof as strings that :func:`verify` re-parses and re-checks one claim at a
time.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Dict, List, Optional

from . import __version__
from .brclass import (
    BrauerError,
    Justification,
    decide_constant_triviality,
    evaluate_at_point,
    extract_constant,
    restrict_to_curve,
    rf_sqrt,
)
from .conics import model_bundle_chart, symbol_of_form
from .parse import ParseError, parse_class, parse_curve, parse_form, parse_point, parse_ratfun
from .poly import PrimeDivisor, support
from .residues import SquareClass, residue_profile, residue_symbol, residue_table
from .symbols import BrClass, QSymbol

__all__ = [
    "COT_FORM",
    "DEFAULT_TARGET",
    "MAIN_CURVE",
    "MAIN_POINT",
    "REMARK_POINT",
    "certify_cot",
    "dumps",
    "verify",
    "VerificationError",
]

COT_FORM = "v*(v^2 - 1)*S^2 - u*(u^2 - 1)*T^2 + u*v*(u^2 - v^2)*R^2"
DEFAULT_TARGET = "sym(u, v)"
MAIN_CURVE = "v=1-u"
MAIN_POINT = "u=0"
REMARK_POINT = "u=2, v=3"

RATIONAL = "Rational"
UNKNOWN = "Unknown"
NOT_EQUAL = "NotEqualOverPlane"


class VerificationError(ValueError):
    pass


def _step(name: str, passed: bool, **data) -> dict:
    return {"step": name, "passed": bool(passed), **data}


def _remark_evaluations(classes: List[BrClass], point, height_bound: int) -> List[dict]:
    out = []
    for c in classes:
        value = evaluate_at_point(c, point)
        dec = decide_constant_triviality(value, height_bound)
        out.append({"class": str(c), "value": str(value), "decision": dec.to_dict()})
    return out


def certify_cot(
    path: str = "main",
    height_bound: int = 50,
    target: Optional[str] = None,
    timestamp: Optional[str] = None,
) -> dict:
    """Run the rationality argument and return the certificate as a JSON-ready dict.

    ``path="main"`` reads the constant off the curve v = 1 - u at u = 0 and
    cross-checks at (2, 3); ``path="remark"`` decides the class at (2, 3) only.
    """
    if path not in ("main", "remark"):
        raise ValueError(f"unknown path {path!r}")
    target_text = DEFAULT_TARGET if target is None else target
    form = parse_form(COT_FORM)
    target_class = parse_class(target_text)
    steps: List[dict] = []
    cert: Dict[str, object] = {
        "path": path,
        "height_bound": height_bound,
        "input_form": str(form),
        "target": str(target_class),
        "curve": None,
        "restricted_class": None,
        "surviving_class": None,
        "evaluation_point": None,
        "constant_class": None,
        "tool_version": __version__,
        "timestamp": timestamp or datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        "verdicts": steps,
    }

    diagonal = form.is_diagonal()
    coeffs = [form.matrix[k][k] for k in range(3)]
    steps.append(_step("form", diagonal, diagonal=[str(c) for c in coeffs]))
    alpha = BrClass([symbol_of_form(coeffs)])
    cert["alpha"] = str(alpha)
    steps.append(_step("symbol", True, alpha=str(alpha)))

    table = residue_table(alpha)
    cert["residue_table"] = [row.to_dict() for row in table]
    steps.append(_step("residue_table", True, rows=len(table)))

    diff = alpha + target_class
    prof = residue_profile(diff)
    cert["difference"] = str(diff)
    cert["difference_profile"] = prof.to_list()
    cert["difference_unramified"] = not prof
    step = _step("difference_unramified", not prof)
    if prof:
        p, cls = prof.rows()[0]
        step["witness_divisor"] = str(p)
        step["witness_class"] = cls.to_dict()
        cert["witness_divisor"] = str(p)
        cert["witness_class"] = cls.to_dict()
    steps.append(step)

    if prof:
        return _conclude(cert, NOT_EQUAL, "difference_unramified")

    decided = []
    if path == "main":
        curve, point = parse_curve(MAIN_CURVE), parse_point(MAIN_POINT)
        ext = extract_constant(diff, curve, point)
        cert["curve"] = str(curve)
        cert["restricted_class"] = str(ext.restricted)
        cert["surviving_class"] = str(ext.surviving)
        cert["evaluation_point"] = str(point)
        cert["constant_class"] = str(ext.constant)
        rules_ok = all(j.check() for j in ext.killed)
        steps.append(
            _step(
                "restriction",
                rules_ok,
                function_field_rules=[j.to_dict() for j in ext.killed],
            )
        )
        steps.append(_step("evaluation", True))
        dec = decide_constant_triviality(ext.constant, height_bound)
        decided.append(dec)
        steps.append(_step("constant_decision", dec.trivial, decision=dec.to_dict()))

    m = parse_point(REMARK_POINT)
    evals = _remark_evaluations([alpha, target_class], m, height_bound)
    remark_ok = all(e["decision"]["status"] == "Trivial" for e in evals)
    steps.append(_step("remark_point", remark_ok, point=str(m), evaluations=evals))
    if path == "remark":
        cert["evaluation_point"] = str(m)
        cert["constant_class"] = " + ".join(e["value"] for e in evals)

    chart = model_bundle_chart()
    cert["model_chart"] = chart.to_dict()
    steps.append(_step("model_chart", chart.verified()))

    failing = next((s["step"] for s in steps if not s["passed"]), None)
    if failing is None:
        return _conclude(cert, RATIONAL, None)
    undecided = failing in ("constant_decision", "remark_point")
    return _conclude(cert, UNKNOWN if undecided else "Failed", failing)


def _conclude(cert: dict, conclusion: str, failing: Optional[str]) -> dict:
    cert["conclusion"] = conclusion
    cert["failing_step"] = failing
    return cert


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# verification ------------------------------------------------------------------------


def _class_of(d: dict) -> SquareClass:
    const = parse_ratfun(d["constant"])
    odd = parse_ratfun(d["odd_poly"])
    if not const.is_constant() or not odd.is_polynomial():
        raise VerificationError(f"malformed square class {d}")
    return SquareClass(const.constant_value(), odd.num * (1 / odd.den.constant_value()))


def _divisor(text: str) -> PrimeDivisor:
    f = parse_ratfun(text)
    if not f.is_polynomial():
        raise VerificationError(f"divisor {text!r} is not a polynomial")
    return PrimeDivisor(f.num)


def _justification(d: dict) -> Justification:
    sym = QSymbol(*(parse_ratfun(x) for x in d["symbol"]))
    witness = tuple(parse_ratfun(x) for x in d.get("witness", ()))
    sources = tuple(QSymbol(*(parse_ratfun(x) for x in s)) for s in d.get("sources", ()))
    return Justification(d["rule"], sym, witness, d.get("index", 0), sources)


def _check_trail(start: BrClass, decision: dict, problems: List[str], label: str):
    """Replay a decision trail against ``start``; a Trivial trail must consume every symbol."""
    pending = [s.ordered() for s in start]
    for k, d in enumerate(decision.get("steps", [])):
        try:
            j = _justification(d)
        except (ParseError, ValueError, KeyError) as exc:
            problems.append(f"{label}: step {k} unreadable ({exc})")
            return
        if not j.check():
            problems.append(f"{label}: step {k} ({j.rule}) fails its check")
            return
        consumed = [s.ordered() for s in j.sources] if j.sources else [j.symbol.ordered()]
        for s in consumed:
            if s not in pending:
                problems.append(f"{label}: step {k} uses {s}, which is not pending")
                return
            pending.remove(s)
        if j.rule in ("normalize", "merge"):
            pending.append(j.symbol.ordered())
    if decision.get("status") == "Trivial" and pending:
        problems.append(f"{label}: Trivial claimed but {len(pending)} symbol(s) left unjustified")


def _same_up_to_squares(s: QSymbol, t: QSymbol) -> bool:
    return rf_sqrt(s.a / t.a) is not None and rf_sqrt(s.b / t.b) is not None


def _check_chart(chart: dict, problems: List[str]):
    import sympy

    s, t, u, v = sympy.symbols("s t u v")
    names = {"s": s, "t": t, "u": u, "v": v, "i": sympy.I}

    def expr(text: str):
        return sympy.sympify(text.replace("^", "**"), locals=names)

    try:
        eq = expr(chart["equation"].removesuffix("= 0").strip())
        fwd = [expr(x) for x in chart["forward"]]
        bwd = [expr(x) for x in chart["backward"]]
    except (sympy.SympifyError, KeyError, TypeError) as exc:
        problems.append(f"model chart unreadable ({exc})")
        return
    sub_fwd = dict(zip((s, t, u, v), fwd))
    if sympy.expand(eq.xreplace(sub_fwd)) != 0:
        problems.append("model chart: forward image leaves the variety")
    for b, x in zip(bwd, (s, t, u)):
        if sympy.expand(b.xreplace(sub_fwd) - x) != 0:
            problems.append("model chart: backward after forward is not the identity")
    back = fwd[3].xreplace(dict(zip((s, t, u), bwd)))
    if sympy.expand(back - v - eq) != 0:
        problems.append("model chart: forward after backward differs from the identity on the variety")


def verify(cert: dict) -> List[str]:
    """Re-check a certificate from its serialized contents; returns the problems found."""
    problems: List[str] = []
    try:
        form = parse_form(cert["input_form"])
        alpha = parse_class(cert["alpha"])
        target = parse_class(cert["target"])
    except (ParseError, ValueError, KeyError) as exc:
        return [f"unreadable header ({exc})"]

    if not form.is_diagonal():
        problems.append("input form is not diagonal")
    elif alpha != BrClass([symbol_of_form([form.matrix[k][k] for k in range(3)])]):
        problems.append("alpha is not the symbol of the input form")

    listed = []
    for row in cert.get("residue_table", []):
        try:
            p = _divisor(row["divisor"])
            cls = _class_of(row["class"])
        except (ParseError, ValueError, KeyError) as exc:
            problems.append(f"residue row unreadable ({exc})")
            continue
        listed.append(p)
        actual = SquareClass.trivial()
        for sym in alpha:
            actual = actual * residue_symbol(sym, p)
        if not actual.same_as(cls):
            problems.append(f"residue at {p} is {actual}, not {cls}")
        if row.get("trivial") != cls.is_trivial():
            problems.append(f"residue row {p} mislabels triviality")
    if sorted(map(str, listed)) != sorted(map(str, support(alpha.entries()))):
        problems.append("residue table does not list exactly the divisors in the support")

    diff = alpha + target
    unramified = not residue_profile(diff)
    if cert.get("difference_unramified") != unramified:
        problems.append("difference_unramified is wrong")
    if not unramified:
        w = cert.get("witness_divisor")
        if w is None:
            problems.append("ramified difference reported without a witness divisor")
        else:
            p = _divisor(w)
            cls = _class_of(cert["witness_class"])
            actual = SquareClass.trivial()
            for sym in diff:
                actual = actual * residue_symbol(sym, p)
            if cls.is_trivial() or not actual.same_as(cls):
                problems.append("witness residue does not check")

    steps = {s["step"]: s for s in cert.get("verdicts", [])}
    try:
        if cert.get("curve") is not None:
            curve = parse_curve(cert["curve"])
            restricted = parse_class(cert["restricted_class"])
            surviving = parse_class(cert["surviving_class"])
            point = parse_point(cert["evaluation_point"])
            constant = parse_class(cert["constant_class"])
            if restrict_to_curve(diff, curve) != restricted:
                problems.append("restricted class does not match the restriction")
            left = list(restricted)
            for k, d in enumerate(steps["restriction"]["function_field_rules"]):
                j = _justification(d)
                if not j.check() or j.symbol.ordered() not in [s.ordered() for s in left]:
                    problems.append(f"function-field rule {k} does not check")
                    continue
                left = [s for s in left if s.ordered() != j.symbol.ordered()]
            if len(left) != len(surviving) or not all(
                any(_same_up_to_squares(s, t) or _same_up_to_squares(s, QSymbol(t.b, t.a)) for t in surviving)
                for s in left
            ):
                problems.append("surviving class is not the remainder up to squares")
            if evaluate_at_point(surviving, point) != constant:
                problems.append("constant class is not the evaluation of the surviving class")
            _check_trail(constant, steps["constant_decision"]["decision"], problems, "constant")
            if (steps["constant_decision"]["decision"]["status"] == "Trivial") != steps["constant_decision"]["passed"]:
                problems.append("constant decision step mislabeled")
        if "remark_point" in steps:
            rp = steps["remark_point"]
            m = parse_point(rp["point"])
            for e in rp["evaluations"]:
                c = parse_class(e["class"])
                value = parse_class(e["value"])
                if c not in (alpha, target):
                    problems.append(f"remark evaluation of unexpected class {c}")
                if evaluate_at_point(c, m) != value:
                    problems.append(f"remark value of {c} is wrong")
                _check_trail(value, e["decision"], problems, f"remark {c}")
    except (ParseError, BrauerError, ValueError, KeyError) as exc:
        problems.append(f"step data unreadable ({exc})")

    if "model_chart" in cert:
        _check_chart(cert["model_chart"], problems)

    all_passed = all(s["passed"] for s in cert.get("verdicts", []))
    if (cert.get("conclusion") == RATIONAL) != (all_passed and unramified and "model_chart" in cert):
        problems.append("conclusion is inconsistent with the step verdicts")
    return problems
