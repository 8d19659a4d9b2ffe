import pytest

from brauerconic.brclass import (
    BrauerError,
    EntryNotUnit,
    Justification,
    NotUnramified,
    RamifiedAlongCurve,
    class_equal_certified,
    decide_constant_triviality,
    evaluate_at_point,
    extract_constant,
    normalize_class,
    normalize_symbol,
    restrict_to_curve,
    steinberg_rules,
)
from brauerconic.gauss import GaussRat
from brauerconic.poly import U, V, ParamCurve, Point, RatFun
from brauerconic.symbols import BrClass, QSymbol, SymbolError

from oracles import brute_isotropic

A = U * V * (U ** 2 - 1) * (V ** 2 - 1)
B = U * (V ** 2 - 1) * (V ** 2 - U ** 2)
ALPHA = BrClass.of((A, B))
UV = BrClass.of((U, V))
D = ParamCurve("v", 1 - U)
P = Point(u=0)
I = GaussRat(0, 1)


def test_symbols_cancel_mod_two():
    c = BrClass.of((U, V), (V, U))
    assert c.is_zero_formally()
    assert (ALPHA + ALPHA).is_zero_formally()
    assert len(ALPHA + UV) == 2
    with pytest.raises(SymbolError):
        QSymbol(0, U)


def test_normalize_symbol_display():
    s = QSymbol(U * (1 - U) * (U ** 2 - 1) * (U ** 2 - 2 * U), U * (U ** 2 - 2 * U) * (1 - 2 * U))
    n = normalize_symbol(s)
    assert n.a == RatFun(-(U + 1) * (U - 2))
    assert n.b == RatFun((U - 2) * (1 - 2 * U))
    assert str(n) == "sym(-u^2 + u + 2, -2*u^2 + 5*u - 2)"


def test_normalize_drops_square_entries():
    assert normalize_class(BrClass.of((4, 9))).is_zero_formally()
    assert normalize_class(BrClass.of((U ** 2, V))).is_zero_formally()
    assert normalize_class(BrClass.of((-1, V))).is_zero_formally()
    c = normalize_class(ALPHA)
    assert normalize_class(c) == c


def test_steinberg_rule_examples():
    assert steinberg_rules(QSymbol(U, 1 - U)).rule == "steinberg"
    j = steinberg_rules(QSymbol(2, -2))
    assert j.rule == "b=-a" and j.check()
    j = steinberg_rules(QSymbol(144, 80))
    assert j.rule == "square-entry" and j.witness == (RatFun(12),) and j.check()
    assert steinberg_rules(QSymbol(2, 3)) is None


def test_justification_rejects_bad_witness():
    j = Justification("square-entry", QSymbol(144, 80), (RatFun(11),))
    assert not j.check()
    j = Justification("isotropic-point", QSymbol(2, 3), (RatFun(1), RatFun(1), RatFun(1)))
    assert not j.check()
    assert not Justification("unknown-rule", QSymbol(2, 3)).check()


def test_restrict_examples():
    assert restrict_to_curve(UV, D) == BrClass.of((U, 1 - U))
    restricted = restrict_to_curve(ALPHA, D)
    assert normalize_class(restricted) == BrClass.of((-(U + 1) * (U - 2), (U - 2) * (1 - 2 * U)))
    with pytest.raises(RamifiedAlongCurve):
        restrict_to_curve(BrClass.of((U, U + V)), ParamCurve("u", 0 * V))


def test_evaluate_examples():
    s = BrClass.of((-(U + 1) * (U - 2), (U - 2) * (1 - 2 * U)))
    assert evaluate_at_point(s, P) == BrClass.of((2, -2))
    assert evaluate_at_point(ALPHA, Point(2, 3)) == BrClass.of((144, 80))
    with pytest.raises(EntryNotUnit):
        evaluate_at_point(UV, Point(0, 1))


def test_restrict_then_evaluate_is_identity_on_constants():
    c = BrClass.of((2, 3), (I, 5))
    assert evaluate_at_point(restrict_to_curve(c, D), P) == c


def test_decide_examples():
    v = decide_constant_triviality(BrClass.of((2, 3)), 2)
    assert v.trivial
    (step,) = v.steps
    assert step.rule == "isotropic-point"
    assert step.witness == (RatFun(1), RatFun(I), RatFun(1))
    assert step.check()
    v = decide_constant_triviality(BrClass.of((2, -2)))
    assert v.trivial and v.steps[0].rule == "b=-a"
    v = decide_constant_triviality(BrClass.of((2, 5)), 20)
    assert v.status == "Unknown" and v.bound == 20
    with pytest.raises(BrauerError):
        decide_constant_triviality(UV)


def test_unknown_matches_brute_force_oracle():
    # X^2 - 2Y^2 - 5T^2 has no nonzero solution of norm <= 20 per the plain triple loop
    assert brute_isotropic((1, -2, -5), 20) is None
    assert decide_constant_triviality(BrClass.of((2, 5)), 20).status == "Unknown"


def test_merge_rule():
    v = decide_constant_triviality(BrClass.of((3, 2), (3, 5)), 0)
    # (3, 2) + (3, 5) merges to (3, 10), which still needs a point: none at bound 0
    assert v.status == "Unknown"
    assert [j.rule for j in v.steps] == ["merge"]
    assert all(j.check() for j in v.steps)
    # (5, 2) + (5, -2) -> (5, -4) -> (5, -1), and -1 is a square
    v = decide_constant_triviality(BrClass.of((5, 2), (5, -2)), 0)
    assert v.trivial
    assert [j.rule for j in v.steps] == ["merge", "normalize", "square-entry"]
    assert all(j.check() for j in v.steps)


def test_monotone_in_bound():
    for pair in [(2, 3), (3, 5), (-3, 7), (I, 3)]:
        if decide_constant_triviality(BrClass.of(pair), 5).trivial:
            assert decide_constant_triviality(BrClass.of(pair), 10).trivial


def test_extract_constant_chain():
    ext = extract_constant(ALPHA + UV, D, P)
    assert [j.rule for j in ext.killed] == ["steinberg"]
    assert ext.surviving == BrClass.of((-(U + 1) * (U - 2), (U - 2) * (1 - 2 * U)))
    assert ext.constant == BrClass.of((2, -2))
    assert extract_constant(BrClass.of((2, 3)), D, P).constant == BrClass.of((2, 3))
    with pytest.raises(NotUnramified):
        extract_constant(ALPHA, D, P)


def test_class_equal_examples():
    r = class_equal_certified(ALPHA, UV, D, P)
    assert r.verdict == "Equal"
    assert r.decision.steps[0].rule == "b=-a"
    assert class_equal_certified(ALPHA, ALPHA, D, P).verdict == "Equal"
    assert class_equal_certified(UV, BrClass.of((V, U)), D, P).difference.is_zero_formally()
    r = class_equal_certified(UV, BrClass.of((U, 2 * V)), D, P)
    assert r.verdict == "NotEqualOverPlane"
    p, cls = r.witness
    assert str(p) == "u" and cls.constant == 2 and cls.odd == 1


def test_two_paths_agree():
    diff = ALPHA + UV
    via_curve = decide_constant_triviality(extract_constant(diff, D, P).constant)
    at_m = evaluate_at_point(diff, Point(2, 3))
    assert via_curve.trivial
    assert decide_constant_triviality(at_m, 2).trivial
