"""Residues of quaternion symbols along prime divisors of the affine plane.

For a discrete valuation w with residue field k, the residue of (a, b) is the
square class of ``(-1)^(w(a) w(b)) * a^w(b) / b^w(a)`` reduced into k.  Here
the divisors are of degree one in a variable, so every residue field is a
rational function field in the other variable and a square class is a pair
(constant class, monic square-free polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Union

from .gauss import GaussRat, gauss_is_square, reduced_constant, square_class_rep
from .poly import BiPoly, PrimeDivisor, RatFun, odd_part, reduce_mod, split_valuation, support
from .symbols import BrClass, QSymbol

__all__ = [
    "SquareClass",
    "ResidueRow",
    "ResidueProfile",
    "residue_unit",
    "residue_symbol",
    "residue_at",
    "residue_table",
    "residue_profile",
    "is_unramified",
]

SymbolLike = Union[QSymbol, tuple]


@dataclass(frozen=True)
class SquareClass:
    """Class of a nonzero rational function modulo squares.

    ``constant`` is the canonical representative from
    :func:`~brauerconic.gauss.square_class_rep`, so -1 reads as 1.
    """

    constant: GaussRat
    odd: BiPoly

    @classmethod
    def of(cls, f) -> "SquareClass":
        f = RatFun.of(f)
        if not f:
            raise ValueError("square class of zero")
        odd, _, c = odd_part(f.num * f.den)
        return cls(square_class_rep(c), odd)

    @classmethod
    def trivial(cls) -> "SquareClass":
        return cls(GaussRat(1), BiPoly.const(1))

    def is_trivial(self) -> bool:
        return self.odd.is_constant() and self.constant == 1

    def value(self) -> BiPoly:
        return self.odd * self.constant

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass.of(self.value() * other.value())

    def same_as(self, other) -> bool:
        """Equality decided through the squareness test, independent of canonical forms."""
        other = other if isinstance(other, SquareClass) else SquareClass.of(other)
        if self.odd != other.odd:
            return False
        return gauss_is_square(self.constant / other.constant) is not None

    def __str__(self) -> str:
        return str(self.value())

    def to_dict(self) -> dict:
        return {"constant": str(self.constant), "odd_poly": str(self.odd)}


def _as_symbol(s: SymbolLike) -> QSymbol:
    return s if isinstance(s, QSymbol) else QSymbol(*s)


def residue_unit(s: SymbolLike, p: PrimeDivisor) -> RatFun:
    """The unit ``(-1)^(va vb) a^vb / b^va`` reduced into the residue field of p."""
    s = _as_symbol(s)
    va, a0 = split_valuation(s.a, p)
    vb, b0 = split_valuation(s.b, p)
    if va == 0 and vb == 0:
        return RatFun(1)
    # with a = p^va a0 and b = p^vb b0 the powers of p cancel, so only the
    # units a0, b0 need reducing, before any powers are taken
    unit = reduce_mod(a0, p) ** vb / reduce_mod(b0, p) ** va
    return -unit if (va * vb) % 2 else unit


def residue_symbol(s: SymbolLike, p: PrimeDivisor) -> SquareClass:
    return SquareClass.of(residue_unit(s, p))


def _display_value(f: RatFun) -> BiPoly:
    # squares stripped, rational sign kept, so a residue of -1 still reads -1
    odd, _, c = odd_part(f.num * f.den)
    return odd * reduced_constant(c)


@dataclass(frozen=True)
class ResidueRow:
    divisor: PrimeDivisor
    value: BiPoly
    square_class: SquareClass

    @property
    def trivial(self) -> bool:
        return self.square_class.is_trivial()

    def to_dict(self) -> dict:
        return {
            "divisor": str(self.divisor),
            "residue_field_variable": self.divisor.residue_var,
            "value": str(self.value),
            "class": self.square_class.to_dict(),
            "trivial": self.trivial,
        }


def _divisors_for(c: BrClass, extra: Iterable[PrimeDivisor]) -> List[PrimeDivisor]:
    found = {p: p for p in support(c.entries())}
    for p in extra:
        found.setdefault(p, p)
    return sorted(found.values(), key=lambda p: p.sort_key())


def residue_at(c: BrClass, p: PrimeDivisor) -> SquareClass:
    """Residue of a whole class at one divisor: the product over its symbols."""
    unit = RatFun(1)
    for s in c:
        unit = unit * residue_unit(s, p)
    return SquareClass.of(unit)


def residue_table(c: BrClass, extra_divisors: Iterable[PrimeDivisor] = ()) -> List[ResidueRow]:
    """One row per divisor in the support of the entries, trivial rows included."""
    rows = []
    for p in _divisors_for(c, extra_divisors):
        unit = RatFun(1)
        for s in c:
            unit = unit * residue_unit(s, p)
        rows.append(ResidueRow(p, _display_value(unit), SquareClass.of(unit)))
    return rows


class ResidueProfile(Dict[PrimeDivisor, SquareClass]):
    """Nontrivial residues only, keyed by divisor."""

    def rows(self) -> List[tuple]:
        return sorted(self.items(), key=lambda kv: str(kv[0]))

    def to_list(self) -> List[dict]:
        return [{"divisor": str(p), "class": cls.to_dict()} for p, cls in self.rows()]


def residue_profile(c: BrClass, extra_divisors: Iterable[PrimeDivisor] = ()) -> ResidueProfile:
    prof = ResidueProfile()
    for row in residue_table(c, extra_divisors):
        if not row.trivial:
            prof[row.divisor] = row.square_class
    return prof


def is_unramified(c: BrClass) -> bool:
    """True when every residue over the affine plane is trivial."""
    return not residue_profile(c)
