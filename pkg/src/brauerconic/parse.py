"""Text syntax for polynomials, rational functions, symbol sums and forms.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := base ('^' nat)?
    base   := nat | ident | '(' expr ')' | 'sym' '(' expr ',' expr ')'

Identifiers are ``i``, ``u`` and ``v``, plus whatever extra names a caller
allows (the variables of a quadratic form, for instance).  Parentheses leave
no node behind, so ``(a + b) + c`` and ``a + b + c`` are different trees and
the printer inserts exactly the parentheses needed to keep them apart.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from .gauss import GaussRat
from .poly import U, V, ParamCurve, Point, RatFun
from .symbols import BrClass, QSymbol

__all__ = [
    "ParseError",
    "Num",
    "Name",
    "Neg",
    "Sum",
    "Product",
    "Power",
    "Sym",
    "Expr",
    "parse_expr",
    "to_text",
    "to_ratfun",
    "to_class",
    "to_form_coefficients",
    "parse_ratfun",
    "parse_class",
    "parse_form",
    "parse_curve",
    "parse_point",
]

BASE_NAMES: FrozenSet[str] = frozenset({"i", "u", "v"})
FORM_NAMES = (("S", "T", "R"), ("X", "Y", "T"))


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Sum:
    """``first`` followed by ``(op, term)`` pairs with op in '+', '-'."""

    first: "Expr"
    rest: Tuple[Tuple[str, "Expr"], ...]


@dataclass(frozen=True)
class Product:
    """``first`` followed by ``(op, factor)`` pairs with op in '*', '/'."""

    first: "Expr"
    rest: Tuple[Tuple[str, "Expr"], ...]

    @property
    def factors(self) -> Tuple["Expr", ...]:
        return (self.first,) + tuple(f for _, f in self.rest)


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Sym:
    a: "Expr"
    b: "Expr"


Expr = Union[Num, Name, Neg, Sum, Product, Power, Sym]


# lexer and parser -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == "" and m.end() == len(text)):
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: FrozenSet[str]):
        self.toks = _tokenize(text)
        self.pos = 0
        self.names = names

    def peek(self) -> Tuple[str, str, int]:
        return self.toks[self.pos]

    def take(self) -> Tuple[str, str, int]:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, ch: str):
        kind, val, off = self.take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}", off)

    def at_op(self, chars: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val in chars

    def expr(self) -> Expr:
        first = self.term()
        rest = []
        while self.at_op("+-"):
            op = self.take()[1]
            rest.append((op, self.term()))
        return Sum(first, tuple(rest)) if rest else first

    def term(self) -> Expr:
        first = self.unary()
        rest = []
        while self.at_op("*/"):
            op = self.take()[1]
            rest.append((op, self.unary()))
        return Product(first, tuple(rest)) if rest else first

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.base()
        if self.at_op("^"):
            self.take()
            kind, val, off = self.take()
            if kind != "num":
                raise ParseError("expected a natural-number exponent", off)
            return Power(base, int(val))
        return base

    def base(self) -> Expr:
        kind, val, off = self.take()
        if kind == "num":
            return Num(int(val))
        if kind == "ident":
            if val == "sym":
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return Sym(a, b)
            if val not in self.names:
                raise ParseError(f"unknown identifier {val!r}", off)
            return Name(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {val!r}", off)


def parse_expr(text: str, extra_names: Iterable[str] = ()) -> Expr:
    p = _Parser(text, BASE_NAMES | frozenset(extra_names))
    tree = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", off)
    return tree


# printer --------------------------------------------------------------------


def to_text(e: Expr) -> str:
    """Canonical text; ``parse_expr(to_text(e)) == e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Sym):
        return f"sym({to_text(e.a)}, {to_text(e.b)})"
    if isinstance(e, Neg):
        inner = to_text(e.operand)
        return f"-({inner})" if isinstance(e.operand, (Sum, Product)) else f"-{inner}"
    if isinstance(e, Power):
        inner = to_text(e.base)
        if isinstance(e.base, (Num, Name, Sym)):
            return f"{inner}^{e.exp}"
        return f"({inner})^{e.exp}"
    if isinstance(e, Sum):
        out = _wrap(e.first, Sum)
        for op, t in e.rest:
            out += f" {op} {_wrap(t, Sum)}"
        return out
    if isinstance(e, Product):
        out = _wrap(e.first, (Sum, Product))
        for op, f in e.rest:
            out += f"{op}{_wrap(f, (Sum, Product))}"
        return out
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, kinds) -> str:
    s = to_text(e)
    return f"({s})" if isinstance(e, kinds) else s


# evaluation -----------------------------------------------------------------


def _offsetless(msg: str) -> ParseError:
    return ParseError(msg, -1)


def to_ratfun(e: Expr) -> RatFun:
    """Value of a symbol-free expression in Q(i)(u, v)."""
    if isinstance(e, Num):
        return RatFun(e.value)
    if isinstance(e, Name):
        if e.name == "i":
            return RatFun(GaussRat(0, 1))
        if e.name == "u":
            return RatFun(U)
        if e.name == "v":
            return RatFun(V)
        raise _offsetless(f"{e.name!r} is not a variable of Q(i)(u, v)")
    if isinstance(e, Neg):
        return -to_ratfun(e.operand)
    if isinstance(e, Power):
        return to_ratfun(e.base) ** e.exp
    if isinstance(e, Sum):
        acc = to_ratfun(e.first)
        for op, t in e.rest:
            acc = acc + to_ratfun(t) if op == "+" else acc - to_ratfun(t)
        return acc
    if isinstance(e, Product):
        acc = to_ratfun(e.first)
        for op, f in e.rest:
            val = to_ratfun(f)
            if op == "/" and not val:
                raise _offsetless("division by zero")
            acc = acc * val if op == "*" else acc / val
        return acc
    raise _offsetless("a symbol cannot appear inside a function")


def to_class(e: Expr) -> BrClass:
    """A sum of symbols; in 2-torsion '-' and '+' agree, and 0 is the empty class."""
    if isinstance(e, Num) and e.value == 0:
        return BrClass()
    if isinstance(e, Sym):
        return BrClass([QSymbol(to_ratfun(e.a), to_ratfun(e.b))])
    if isinstance(e, Sum):
        acc = to_class(e.first)
        for _, t in e.rest:
            acc = acc + to_class(t)
        return acc
    raise _offsetless("expected a sum of symbols sym(a, b)")


# quadratic forms: {exponent triple: coefficient}
_FormPoly = Dict[Tuple[int, ...], RatFun]


def _fp_clean(p: _FormPoly) -> _FormPoly:
    return {m: c for m, c in p.items() if c}


def _fp_add(p: _FormPoly, q: _FormPoly, sign: int = 1) -> _FormPoly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, RatFun(0)) + (c if sign > 0 else -c)
    return _fp_clean(out)


def _fp_mul(p: _FormPoly, q: _FormPoly) -> _FormPoly:
    out: _FormPoly = {}
    for m, c in p.items():
        for n, d in q.items():
            k = tuple(x + y for x, y in zip(m, n))
            out[k] = out.get(k, RatFun(0)) + c * d
    return _fp_clean(out)


def to_form_coefficients(e: Expr, names: Sequence[str]) -> _FormPoly:
    """Polynomial in the form variables ``names`` with coefficients in Q(i)(u, v)."""
    zero = (0,) * len(names)

    def go(e: Expr) -> _FormPoly:
        if isinstance(e, Name) and e.name in names:
            m = [0] * len(names)
            m[names.index(e.name)] = 1
            return {tuple(m): RatFun(1)}
        if isinstance(e, (Num, Name)):
            return _fp_clean({zero: to_ratfun(e)})
        if isinstance(e, Neg):
            return {m: -c for m, c in go(e.operand).items()}
        if isinstance(e, Power):
            base = go(e.base)
            acc = {zero: RatFun(1)}
            for _ in range(e.exp):
                acc = _fp_mul(acc, base)
            return acc
        if isinstance(e, Sum):
            acc = go(e.first)
            for op, t in e.rest:
                acc = _fp_add(acc, go(t), 1 if op == "+" else -1)
            return acc
        if isinstance(e, Product):
            acc = go(e.first)
            for op, f in e.rest:
                val = go(f)
                if op == "*":
                    acc = _fp_mul(acc, val)
                    continue
                if set(val) - {zero}:
                    raise _offsetless("division by a form variable")
                if not val:
                    raise _offsetless("division by zero")
                acc = {m: c / val[zero] for m, c in acc.items()}
            return acc
        raise _offsetless("a symbol cannot appear inside a form")

    return go(e)


# entry points ---------------------------------------------------------------


def parse_ratfun(text: str) -> RatFun:
    return to_ratfun(parse_expr(text))


def parse_class(text: str) -> BrClass:
    return to_class(parse_expr(text))


def _form_names(text: str) -> Tuple[str, str, str]:
    used = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))
    for names in FORM_NAMES:
        if used & (set(names) - {"T"}):
            return names
    return FORM_NAMES[0]


def parse_form(text: str):
    """A quadratic form in S, T, R (or X, Y, T) as a :class:`TernaryForm`."""
    from .conics import ConicError, TernaryForm

    names = _form_names(text)
    coeffs = to_form_coefficients(parse_expr(text, names), names)
    try:
        return TernaryForm.from_coefficients(coeffs, names)
    except ConicError as exc:
        raise _offsetless(str(exc)) from exc


def parse_curve(text: str) -> ParamCurve:
    """``v=1-u`` or ``u=...`` with the right side in the other variable."""
    lhs, eq, rhs = text.partition("=")
    var = lhs.strip()
    if not eq or var not in ("u", "v"):
        raise ParseError("expected a curve of the form v=f(u) or u=f(v)", 0)
    off = text.index("=") + 1
    try:
        image = to_ratfun(parse_expr(rhs))
    except ParseError as exc:
        raise ParseError(exc.message, exc.offset + off if exc.offset >= 0 else off) from exc
    other = "u" if var == "v" else "v"
    if not image.is_polynomial() or set(image.variables()) - {other}:
        raise ParseError(f"the right side must be a polynomial in {other}", off)
    return ParamCurve(var, image.num * (1 / image.den.constant_value()))


def parse_point(text: str) -> Point:
    """``u=0`` or ``u=2, v=3``; coordinates are constants of Q(i)."""
    coords: Dict[str, GaussRat] = {}
    start = 0
    for part in text.split(","):
        lhs, eq, rhs = part.partition("=")
        var = lhs.strip()
        if not eq or var not in ("u", "v") or var in coords:
            raise ParseError("expected coordinates like u=2, v=3", start)
        val = to_ratfun(parse_expr(rhs))
        if not val.is_constant():
            raise ParseError("point coordinates must be constants", start)
        coords[var] = val.constant_value()
        start += len(part) + 1
    return Point(**coords)
