import pytest

from brauerconic.gauss import GaussRat
from brauerconic.poly import U, V, PrimeDivisor, RatFun, UnsupportedDivisor
from brauerconic.residues import (
    SquareClass,
    is_unramified,
    residue_profile,
    residue_symbol,
    residue_table,
)
from brauerconic.symbols import BrClass

A = U * V * (U ** 2 - 1) * (V ** 2 - 1)
B = U * (V ** 2 - 1) * (V ** 2 - U ** 2)
ALPHA = BrClass.of((A, B))
UV = BrClass.of((U, V))


def test_alpha_residue_table():
    rows = {str(r.divisor): (str(r.value), r.trivial) for r in residue_table(ALPHA)}
    assert rows == {
        "u": ("v", False),
        "u + 1": ("-1", True),
        "u - 1": ("1", True),
        "u + v": ("-1", True),
        "u - v": ("1", True),
        "v": ("u", False),
        "v + 1": ("-1", True),
        "v - 1": ("1", True),
    }


def test_residue_fields():
    rows = {str(r.divisor): r.divisor.residue_var for r in residue_table(ALPHA)}
    assert rows["u"] == "v" and rows["v"] == "u" and rows["u + v"] == "u"


def test_residue_symbol_examples():
    assert residue_symbol((A, B), PrimeDivisor(U)) == SquareClass(GaussRat(1), V)
    assert residue_symbol((A, B), PrimeDivisor(V + 1)).is_trivial()
    assert residue_symbol((U, V), PrimeDivisor(U)) == SquareClass(GaussRat(1), V)
    # (u, u) has residue -1, a square over Q(i)
    assert residue_symbol((U, U), PrimeDivisor(U)).is_trivial()


def test_profile_examples():
    prof = residue_profile(ALPHA)
    assert {str(p): str(c) for p, c in prof.items()} == {"u": "v", "v": "u"}
    assert not residue_profile(ALPHA + UV)
    assert not residue_profile(BrClass.of((2, 3)))
    assert residue_table(BrClass.of((2, 3))) == []


def test_is_unramified():
    assert is_unramified(ALPHA + UV)
    assert not is_unramified(ALPHA)
    assert not is_unramified(UV)


def test_profile_serialization_sorted():
    out = residue_profile(ALPHA).to_list()
    assert [r["divisor"] for r in out] == ["u", "v"]
    assert out[0]["class"] == {"constant": "1", "odd_poly": "v"}


def test_constant_class_residue():
    prof = residue_profile(BrClass.of((U, 2)))
    ((p, cls),) = prof.items()
    assert str(p) == "u" and cls.constant == 2 and cls.odd == 1


def test_extra_divisors_listed():
    rows = residue_table(UV, [PrimeDivisor(U + V)])
    assert [str(r.divisor) for r in rows] == ["u", "u + v", "v"]
    assert rows[1].trivial


def test_square_class_equality_via_squareness():
    assert SquareClass.of(RatFun(-4 * V)).same_as(SquareClass.of(RatFun(V)))
    assert not SquareClass.of(RatFun(2 * V)).same_as(SquareClass.of(RatFun(V)))
    assert SquareClass.of(RatFun(GaussRat(0, 2) * V)).same_as(V)


def test_unsupported_divisor():
    with pytest.raises(UnsupportedDivisor):
        residue_profile(BrClass.of((U ** 2 + V ** 2 + 1, U)))
