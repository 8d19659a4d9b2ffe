import random
from fractions import Fraction

import pytest

from brauerconic.conics import (
    ConicPoint,
    DegenerateForm,
    PointNotOnConic,
    TernaryForm,
    _matmul,
    _transpose,
    conic_symbol,
    conics_isomorphic,
    diagonalize,
    model_bundle_chart,
    parametrize,
    point_search,
    symbol_of_form,
)
from brauerconic.gauss import GaussRat
from brauerconic.poly import U, V, ParamCurve, Point, RatFun
from brauerconic.residues import residue_profile
from brauerconic.symbols import BrClass, QSymbol

from oracles import brute_isotropic

I = GaussRat(0, 1)
D = ParamCurve("v", 1 - U)
P = Point(u=0)
COT = (V * (V ** 2 - 1), -U * (U ** 2 - 1), U * V * (U ** 2 - V ** 2))


def _check_congruence(q):
    diag, p = diagonalize(q)
    m = _matmul(_matmul(_transpose(p), q.matrix), p)
    for i in range(3):
        for j in range(3):
            assert m[i][j] == (diag[i] if i == j else 0)
    return diag


def test_diagonalize_examples():
    q = TernaryForm.diagonal(*COT)
    diag, p = diagonalize(q)
    assert diag == tuple(RatFun(x) for x in COT)
    assert all(p[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    q = TernaryForm([[1, Fraction(1, 2), 0], [Fraction(1, 2), 1, 0], [0, 0, -1]])
    assert _check_congruence(q) == (RatFun(1), RatFun(Fraction(3, 4)), RatFun(-1))
    with pytest.raises(DegenerateForm):
        TernaryForm([[1, 1, 0], [1, 1, 0], [0, 0, 1]])


def test_diagonalize_zero_diagonal():
    q = TernaryForm([[0, U, 0], [U, 0, 0], [0, 0, V]])
    diag = _check_congruence(q)
    assert all(diag)


def test_diagonalize_congruence_random():
    rng = random.Random(3)
    for _ in range(40):
        m = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                m[i][j] = m[j][i] = rng.choice([0, 1, -2, 3, U, V, U + 1])
        try:
            q = TernaryForm(m)
        except DegenerateForm:
            continue
        diag = _check_congruence(q)
        # determinant changes by det(P)^2
        prod = diag[0] * diag[1] * diag[2]
        assert prod / q.determinant() != 0


def test_symbol_of_form_examples():
    assert symbol_of_form((1, -U, -V)) == QSymbol(U, V)
    a = U * V * (U ** 2 - 1) * (V ** 2 - 1)
    b = U * (V ** 2 - 1) * (V ** 2 - U ** 2)
    assert symbol_of_form(COT) == QSymbol(a, b)
    s = symbol_of_form((1, 1, 1))
    assert s == QSymbol(-1, -1)


def test_symbol_invariance_under_scaling():
    base = BrClass([symbol_of_form(COT)])
    for g in [U + 2, V * V + 1, RatFun(3)]:
        scaled = BrClass([symbol_of_form(tuple(x * g for x in COT))])
        assert dict(residue_profile(scaled)) == dict(residue_profile(base))
        squared = BrClass([symbol_of_form((COT[0], COT[1] * g * g, COT[2]))])
        assert dict(residue_profile(squared)) == dict(residue_profile(base))
        assert conics_isomorphic(
            TernaryForm.diagonal(*(x * g for x in COT)), TernaryForm.diagonal(1, -U, -V), D, P
        ).verdict == "Equal"


def test_conics_isomorphic_examples():
    cot = TernaryForm.diagonal(*COT)
    model = TernaryForm.diagonal(1, -U, -V)
    assert conics_isomorphic(cot, model, D, P).verdict == "Equal"
    assert conics_isomorphic(model, model, D, P).verdict == "Equal"
    r = conics_isomorphic(model, TernaryForm.diagonal(1, -U, -2 * V), D, P)
    assert r.verdict == "NotEqualOverPlane"
    assert str(r.witness[0]) == "u"


def test_point_search_examples():
    assert point_search(TernaryForm.diagonal(1, -2, -3), 5).coords == (RatFun(1), RatFun(I), RatFun(1))
    assert point_search(TernaryForm.diagonal(1, 1, 1), 5).coords == (RatFun(1), RatFun(I), RatFun(0))
    assert point_search(TernaryForm.diagonal(1, -2, -5), 20) is None


def test_point_search_minimal_against_brute_force():
    rng = random.Random(5)
    for _ in range(25):
        coeffs = tuple(rng.choice([1, -1, 2, -2, 3, -3, 5, -5, 6]) for _ in range(3))
        q = TernaryForm.diagonal(*coeffs)
        found = point_search(q, 5)
        ref = brute_isotropic(coeffs, 5)
        if ref is None:
            assert found is None
            continue
        expected = tuple(RatFun(GaussRat(*z)) for z in ref)
        assert found.coords == expected, (coeffs, found, ref)
        assert q.value(found.coords) == 0


def test_parametrize_examples():
    for coeffs, pt in [((1, 1, 1), (1, I, 0)), ((1, -2, -3), (1, I, 1))]:
        q = TernaryForm.diagonal(*coeffs)
        par = parametrize(q, ConicPoint(pt))
        assert par.verification_polynomial() == {}
        assert par.is_proper()
        for s, t in [(1, 0), (0, 1), (2, 3), (-1, 5)]:
            assert q.value(par.at(s, t)) == 0
    with pytest.raises(PointNotOnConic):
        parametrize(TernaryForm.diagonal(1, 1, 1), ConicPoint((1, 1, 1)))


def test_parametrize_over_function_field():
    # S^2 - u T^2 - u^2 R^2 has the point (u, 0, 1) over Q(i)(u)
    q = TernaryForm.diagonal(1, -U, -(U ** 2))
    par = parametrize(q, ConicPoint((U, 0, 1)))
    assert par.verification_polynomial() == {}
    assert par.is_proper()


def test_model_chart():
    ch = model_bundle_chart()
    assert ch.verified()
    assert ch.apply_forward(0, 0, 0) == (0, 0, 0, -1)
    assert ch.apply_backward(*ch.apply_forward(1, 2, 3)) == (1, 2, 3)
    assert ch.image_identity().is_zero()
    d = ch.to_dict()
    assert d["image_identity"] == "0"
    assert d["round_trip_identity"] == ["0", "0", "0"]


def test_conic_symbol_of_nondiagonal_form():
    q = TernaryForm([[1, Fraction(1, 2), 0], [Fraction(1, 2), 1, 0], [0, 0, -1]])
    # <1, 3/4, -1>: (-3/4, 1) has a square entry
    s = conic_symbol(q)
    assert s == QSymbol(-3, 1)
