"""Operations on 2-torsion Brauer classes of Q(i)(u, v).

Everything that declares a symbol trivial returns a :class:`Justification`
whose ``check`` re-verifies the claim from the stored data alone.  Constant
classes are only ever semi-decided: ``Trivial`` with a justification or
``Unknown`` with the exhausted search bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .gauss import GaussRat, gauss_is_square, reduced_constant
from .poly import (
    IdenticallyZeroDenominator,
    ParamCurve,
    Point,
    PrimeDivisor,
    RatFun,
    odd_part,
    substitute,
)
from .residues import ResidueProfile, SquareClass, residue_profile
from .search import find_isotropic
from .symbols import BrClass, QSymbol

__all__ = [
    "BrauerError",
    "RamifiedAlongCurve",
    "EntryNotUnit",
    "NotUnramified",
    "Justification",
    "TrivialityVerdict",
    "ComparisonResult",
    "normalize_entry",
    "normalize_symbol",
    "normalize_class",
    "rf_sqrt",
    "steinberg_rules",
    "restrict_to_curve",
    "evaluate_at_point",
    "decide_constant_triviality",
    "extract_constant",
    "class_equal_certified",
]


class BrauerError(ValueError):
    pass


class RamifiedAlongCurve(BrauerError):
    pass


class EntryNotUnit(BrauerError):
    pass


class NotUnramified(BrauerError):
    def __init__(self, profile: ResidueProfile):
        self.profile = profile
        rows = ", ".join(f"{p}=0: {c}" for p, c in profile.rows())
        super().__init__(f"class has nontrivial residues ({rows})")


# normalization ---------------------------------------------------------------


def normalize_entry(f) -> RatFun:
    """Strip square factors: f -> c * odd with c a reduced constant."""
    f = RatFun.of(f)
    odd, _, c = odd_part(f.num * f.den)
    return RatFun(odd * reduced_constant(c))


def normalize_symbol(s: QSymbol) -> QSymbol:
    return QSymbol(normalize_entry(s.a), normalize_entry(s.b))


def rf_sqrt(f) -> Optional[RatFun]:
    """A square root of f in Q(i)(u, v), or None."""
    f = RatFun.of(f)
    odd, w, c = odd_part(f.num * f.den)
    if not odd.is_constant():
        return None
    r = gauss_is_square(c)
    if r is None:
        return None
    # f * den^2 = num * den = c * w^2
    return RatFun(w * r, f.den)


def normalize_class(c: BrClass) -> BrClass:
    """Normalize every symbol and drop those with a square entry."""
    kept = []
    for s in c:
        n = normalize_symbol(s)
        if rf_sqrt(n.a) is None and rf_sqrt(n.b) is None:
            kept.append(n)
    return BrClass(kept)


# justifications -----------------------------------------------------------------


def _rf(x) -> str:
    return str(x)


@dataclass(frozen=True)
class Justification:
    """One checkable reason that a symbol is zero (or a rewriting step).

    rules
      square-entry    entry ``index`` equals ``witness[0]**2``
      b=-a            ``b == -a * witness[0]**2``
      steinberg       ``a + b == 1``
      isotropic-point ``X^2 - a Y^2 - b T^2 == 0`` at ``witness``
      normalize       ``source`` entries are ``symbol`` entries times ``witness[k]**2``
      merge           ``sources`` (a, b) + (a, c) rewritten to ``symbol`` = (a, bc)
    """

    rule: str
    symbol: QSymbol
    witness: Tuple[RatFun, ...] = ()
    index: int = 0
    sources: Tuple[QSymbol, ...] = ()

    def check(self) -> bool:
        a, b = self.symbol.a, self.symbol.b
        w = self.witness
        if self.rule == "square-entry":
            return w[0] * w[0] == self.symbol.entries[self.index]
        if self.rule == "b=-a":
            return b == -a * w[0] * w[0]
        if self.rule == "steinberg":
            return a + b == 1
        if self.rule == "isotropic-point":
            X, Y, T = w
            if not (X or Y or T):
                return False
            return X * X - a * Y * Y - b * T * T == 0
        if self.rule == "normalize":
            (src,) = self.sources
            return src.a == a * w[0] * w[0] and src.b == b * w[1] * w[1]
        if self.rule == "merge":
            s1, s2 = self.sources
            for p, q in ((s1.a, s1.b), (s1.b, s1.a)):
                for r, t in ((s2.a, s2.b), (s2.b, s2.a)):
                    if p != r:
                        continue
                    if (a == p and b == q * t) or (b == p and a == q * t):
                        return True
            return False
        return False

    def to_dict(self) -> dict:
        d = {"rule": self.rule, "symbol": [_rf(self.symbol.a), _rf(self.symbol.b)]}
        if self.witness:
            d["witness"] = [_rf(x) for x in self.witness]
        if self.rule == "square-entry":
            d["index"] = self.index
        if self.sources:
            d["sources"] = [[_rf(s.a), _rf(s.b)] for s in self.sources]
        return d


@dataclass
class TrivialityVerdict:
    status: str  # "Trivial" or "Unknown"
    steps: List[Justification] = field(default_factory=list)
    bound: Optional[int] = None
    remaining: Optional[BrClass] = None

    @property
    def trivial(self) -> bool:
        return self.status == "Trivial"

    def to_dict(self) -> dict:
        d = {"status": self.status, "steps": [j.to_dict() for j in self.steps]}
        if self.bound is not None:
            d["height_bound"] = self.bound
        if self.remaining is not None and len(self.remaining):
            d["remaining"] = str(self.remaining)
        return d


def steinberg_rules(s: QSymbol) -> Optional[Justification]:
    """Recognize a symbol that is zero by an elementary rule."""
    for idx, e in enumerate(s.entries):
        r = rf_sqrt(e)
        if r is not None:
            return Justification("square-entry", s, (r,), index=idx)
    r = rf_sqrt(-s.b / s.a)
    if r is not None:
        return Justification("b=-a", s, (r,))
    if s.a + s.b == 1:
        return Justification("steinberg", s)
    return None


# restriction and evaluation -----------------------------------------------------------


def restrict_to_curve(c: BrClass, curve: ParamCurve) -> BrClass:
    """Entry-wise restriction to the generic point of ``curve``."""
    out = []
    for s in c:
        ents = []
        for e in s.entries:
            try:
                r = substitute(e, curve)
            except IdenticallyZeroDenominator:
                r = None
            if not r:
                raise RamifiedAlongCurve(f"entry {e} is not a unit along {curve}")
            ents.append(r)
        out.append(QSymbol(*ents))
    return BrClass(out)


def evaluate_at_point(c: BrClass, pt: Point) -> BrClass:
    """Entry-wise evaluation; every entry must be a unit at ``pt``."""
    coords = pt.coords()
    out = []
    for s in c:
        ents = []
        for e in s.entries:
            missing = [x for x in e.variables() if x not in coords]
            if missing:
                raise EntryNotUnit(f"point {pt} does not fix {', '.join(missing)} in {e}")
            n, d = e.num(**coords), e.den(**coords)
            if not n or not d:
                raise EntryNotUnit(f"entry {e} is not a unit at {pt}")
            ents.append(RatFun(n / d))
        out.append(QSymbol(*ents))
    return BrClass(out)


# deciding constant classes --------------------------------------------------------


def _normalize_step(s: QSymbol) -> Tuple[QSymbol, Optional[Justification]]:
    n = normalize_symbol(s)
    if n == s:
        return s, None
    wa = rf_sqrt(s.a / n.a)
    wb = rf_sqrt(s.b / n.b)
    return n, Justification("normalize", n, (wa, wb), sources=(s,))


def _merge_once(symbols: List[QSymbol]) -> Optional[Tuple[List[QSymbol], Justification]]:
    for i in range(len(symbols)):
        for j in range(i + 1, len(symbols)):
            s1, s2 = symbols[i], symbols[j]
            for p, q in ((s1.a, s1.b), (s1.b, s1.a)):
                for r, t in ((s2.a, s2.b), (s2.b, s2.a)):
                    if p == r:
                        merged = QSymbol(p, q * t)
                        rest = [s for k, s in enumerate(symbols) if k not in (i, j)]
                        return rest + [merged], Justification("merge", merged, sources=(s1, s2))
    return None


def decide_constant_triviality(c: BrClass, height_bound: int = 50) -> TrivialityVerdict:
    """Semi-decide whether a constant class vanishes in Br(Q(i))."""
    if height_bound < 0:
        raise BrauerError("height bound must be nonnegative")
    for s in c:
        if not s.is_constant():
            raise BrauerError(f"{s} is not constant")
    steps: List[Justification] = []

    def sweep(symbols):
        left = []
        for s in symbols:
            j = steinberg_rules(s)
            if j is None:
                left.append(s)
            else:
                steps.append(j)
        return left

    pending = []
    for s in sweep(list(c)):
        n, j = _normalize_step(s)
        if j is not None:
            steps.append(j)
        pending.append(n)
    pending = sweep(pending)
    while len(pending) > 1:
        res = _merge_once(sorted(pending, key=lambda s: (str(s.a), str(s.b))))
        if res is None:
            break
        merged, j = res
        steps.append(j)
        last = merged[-1]
        n, jn = _normalize_step(last)
        if jn is not None:
            steps.append(jn)
        pending = sweep(merged[:-1] + [n])

    left = []
    for s in pending:
        m = [
            [GaussRat(1), GaussRat(0), GaussRat(0)],
            [GaussRat(0), -s.a.constant_value(), GaussRat(0)],
            [GaussRat(0), GaussRat(0), -s.b.constant_value()],
        ]
        pt = find_isotropic(m, height_bound)
        if pt is None:
            left.append(s)
        else:
            steps.append(Justification("isotropic-point", s, tuple(RatFun(x) for x in pt)))
    if left:
        return TrivialityVerdict("Unknown", steps, height_bound, BrClass(left))
    return TrivialityVerdict("Trivial", steps, height_bound)


# constants and comparisons ------------------------------------------------------------


@dataclass
class ConstantExtraction:
    constant: BrClass
    restricted: BrClass
    killed: List[Justification]
    surviving: BrClass
    curve: ParamCurve
    point: Point

    def to_dict(self) -> dict:
        return {
            "curve": str(self.curve),
            "restricted_class": str(self.restricted),
            "function_field_rules": [j.to_dict() for j in self.killed],
            "surviving_class": str(self.surviving),
            "evaluation_point": str(self.point),
            "constant_class": str(self.constant),
        }


def extract_constant(c: BrClass, curve: ParamCurve, pt: Point) -> ConstantExtraction:
    """The constant class of an unramified ``c``, read off along a curve at a point.

    Restrict to the curve, drop symbols that vanish by an elementary rule over
    the curve's function field, normalize the rest and evaluate at ``pt``,
    where every surviving entry must be a unit.
    """
    prof = residue_profile(c)
    if prof:
        raise NotUnramified(prof)
    restricted = restrict_to_curve(c, curve)
    killed, survivors = [], []
    for s in restricted:
        j = steinberg_rules(s)
        if j is None:
            survivors.append(normalize_symbol(s))
        else:
            killed.append(j)
    surviving = BrClass(survivors)
    const = evaluate_at_point(surviving, pt)
    return ConstantExtraction(const, restricted, killed, surviving, curve, pt)


@dataclass
class ComparisonResult:
    verdict: str  # "Equal", "NotEqualOverPlane" or "Unknown"
    difference: BrClass
    profile: ResidueProfile
    extraction: Optional[ConstantExtraction] = None
    decision: Optional[TrivialityVerdict] = None

    @property
    def witness(self) -> Optional[Tuple[PrimeDivisor, SquareClass]]:
        rows = self.profile.rows()
        return rows[0] if rows else None

    def to_dict(self) -> dict:
        d = {
            "verdict": self.verdict,
            "difference": str(self.difference),
            "difference_profile": self.profile.to_list(),
            "difference_unramified": not self.profile,
        }
        if self.witness is not None:
            p, cls = self.witness
            d["witness_divisor"] = str(p)
            d["witness_class"] = cls.to_dict()
        if self.extraction is not None:
            d.update(self.extraction.to_dict())
        if self.decision is not None:
            d["constant_decision"] = self.decision.to_dict()
        return d


def class_equal_certified(
    x: BrClass, y: BrClass, curve: ParamCurve, pt: Point, height_bound: int = 50
) -> ComparisonResult:
    """Decide x = y through the residues and the constant of x + y."""
    diff = x + y
    if diff.is_zero_formally():
        return ComparisonResult("Equal", diff, ResidueProfile())
    prof = residue_profile(diff)
    if prof:
        return ComparisonResult("NotEqualOverPlane", diff, prof)
    ext = extract_constant(diff, curve, pt)
    dec = decide_constant_triviality(ext.constant, height_bound)
    return ComparisonResult("Equal" if dec.trivial else "Unknown", diff, prof, ext, dec)
