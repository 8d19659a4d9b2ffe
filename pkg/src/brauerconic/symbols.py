"""Quaternion symbols and 2-torsion Brauer classes as plain data."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from .poly import RatFun

__all__ = ["QSymbol", "BrClass", "SymbolError"]


class SymbolError(ValueError):
    pass


@dataclass(frozen=True)
class QSymbol:
    """The quaternion symbol (a, b) with nonzero rational-function entries."""

    a: RatFun
    b: RatFun

    def __post_init__(self):
        a, b = RatFun.of(self.a), RatFun.of(self.b)
        if not a or not b:
            raise SymbolError("quaternion symbol entries must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def entries(self) -> Tuple[RatFun, RatFun]:
        return (self.a, self.b)

    def ordered(self) -> "QSymbol":
        # (a, b) = (b, a) in 2-torsion, so entries are sorted for a canonical key
        if self.b.sort_key() < self.a.sort_key():
            return QSymbol(self.b, self.a)
        return self

    def is_constant(self) -> bool:
        return self.a.is_constant() and self.b.is_constant()

    def __str__(self) -> str:
        return f"sym({self.a}, {self.b})"


class BrClass:
    """A formal sum of symbols modulo 2; identical symbols cancel in pairs.

    (a, b) and (b, a) count as the same symbol; the orientation seen first is kept.
    """

    __slots__ = ("symbols",)

    def __init__(self, symbols: Iterable[QSymbol] = ()):
        counts: Counter = Counter()
        first = {}
        for s in symbols:
            key = s.ordered()
            counts[key] += 1
            first.setdefault(key, s)
        kept = [first[k] for k, n in counts.items() if n % 2]
        kept.sort(key=lambda s: (str(s.ordered().a), str(s.ordered().b)))
        object.__setattr__(self, "symbols", tuple(kept))

    def __setattr__(self, name, value):
        raise AttributeError("BrClass is immutable")

    @classmethod
    def of(cls, *pairs) -> "BrClass":
        """``BrClass.of((a, b), (c, d))``."""
        return cls(QSymbol(a, b) for a, b in pairs)

    def __add__(self, other: "BrClass") -> "BrClass":
        if not isinstance(other, BrClass):
            return NotImplemented
        return BrClass(self.symbols + other.symbols)

    # in 2-torsion subtraction is addition
    __sub__ = __add__

    def __iter__(self) -> Iterator[QSymbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def is_zero_formally(self) -> bool:
        return not self.symbols

    def entries(self) -> Iterator[RatFun]:
        for s in self.symbols:
            yield s.a
            yield s.b

    def is_constant(self) -> bool:
        return all(s.is_constant() for s in self.symbols)

    def key(self) -> tuple:
        return tuple(s.ordered() for s in self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, BrClass) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.symbols) if self.symbols else "0"

    def __repr__(self) -> str:
        return f"BrClass({self})"
