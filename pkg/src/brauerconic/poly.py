"""Bivariate polynomials and rational functions over Q(i) in the variables u, v.

``BiPoly`` is a sparse map from exponent pairs ``(deg_u, deg_v)`` to nonzero
Gaussian rational coefficients.  Monomials are ordered lexicographically with
u > v; "leading" and "monic" always refer to that order.

The gcd is a primitive polynomial remainder sequence in u over Q(i)[v], with
contents handled by Euclid in Q(i)[v].  Square-free structure comes from Yun's
algorithm, so no irreducible factorization is needed for ``odd_part``.  The
only place that factors is :func:`prime_factors`, which finds the divisor
support of a polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterable, List, Optional, Tuple

from .gauss import ONE, ZERO, GaussRat, as_gauss

__all__ = [
    "BiPoly",
    "RatFun",
    "U",
    "V",
    "VARS",
    "poly_gcd",
    "sqf_list",
    "odd_part",
    "ParamCurve",
    "Point",
    "PrimeDivisor",
    "substitute",
    "reduce_mod",
    "evaluate",
    "valuation",
    "split_valuation",
    "prime_factors",
    "support",
    "PolyError",
    "IdenticallyZeroDenominator",
    "NonUnitAtDivisor",
    "PoleAtPoint",
    "UnsupportedDivisor",
]

VARS = ("u", "v")
_IDX = {"u": 0, "v": 1}

Monomial = Tuple[int, int]


class PolyError(ValueError):
    pass


class IdenticallyZeroDenominator(PolyError):
    pass


class NonUnitAtDivisor(PolyError):
    pass


class PoleAtPoint(PolyError):
    pass


class UnsupportedDivisor(PolyError):
    """A prime factor is not of degree one in either variable."""


def _other(var: str) -> str:
    return "v" if var == "u" else "u"


def _integral_terms(terms) -> Tuple[int, List[Tuple[Monomial, Tuple[int, int]]]]:
    d = 1
    for c in terms.values():
        d = lcm(d, c.re.denominator, c.im.denominator)
    if d == 1:
        return 1, [(m, (c.re.numerator, c.im.numerator)) for m, c in terms.items()]
    return d, [
        (m, (c.re.numerator * (d // c.re.denominator), c.im.numerator * (d // c.im.denominator)))
        for m, c in terms.items()
    ]


class BiPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, object]] = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_gauss(c)
                if c:
                    clean[(int(m[0]), int(m[1]))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "BiPoly":
        return cls({(power, 0) if name == "u" else (0, power): ONE})

    @classmethod
    def _raw(cls, terms: Dict[Monomial, GaussRat]) -> "BiPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # basic structure ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise PolyError(f"{self} is not constant")
        return self.terms.get((0, 0), ZERO)

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        k = _IDX[var]
        return max((m[k] for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((m[0] + m[1] for m in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        return tuple(x for x in VARS if self.degree(x) > 0)

    def monomials(self) -> List[Monomial]:
        return sorted(self.terms, reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms)

    def leading_coeff(self) -> GaussRat:
        if not self.terms:
            return ZERO
        return self.terms[max(self.terms)]

    def monic(self) -> "BiPoly":
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == ONE:
            return self
        inv = lc.inverse()
        return BiPoly._raw({m: c * inv for m, c in self.terms.items()})

    def coeffs_in(self, var: str) -> Dict[int, "BiPoly"]:
        """Split as a polynomial in ``var`` with coefficients in the other variable."""
        k = _IDX[var]
        out: Dict[int, Dict[Monomial, GaussRat]] = {}
        for m, c in self.terms.items():
            rest = (0, m[1]) if k == 0 else (m[0], 0)
            out.setdefault(m[k], {})[rest] = c
        return {d: BiPoly._raw(t) for d, t in out.items()}

    def lc_in(self, var: str) -> "BiPoly":
        return self.coeffs_in(var)[self.degree(var)]

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "BiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return BiPoly._raw({})
        # multiply in integers after clearing denominators; one division per term
        d1, t1 = _integral_terms(self.terms)
        d2, t2 = _integral_terms(other.terms)
        acc: Dict[Monomial, List[int]] = {}
        for (a, b), (p, q) in t1:
            for (x, y), (r, t) in t2:
                m = (a + x, b + y)
                slot = acc.get(m)
                if slot is None:
                    acc[m] = [p * r - q * t, p * t + q * r]
                else:
                    slot[0] += p * r - q * t
                    slot[1] += p * t + q * r
        den = d1 * d2
        out = {}
        for m, (re, im) in acc.items():
            if re or im:
                out[m] = GaussRat(Fraction(re, den), Fraction(im, den))
        return BiPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise PolyError("negative power of a polynomial")
        result, base = BiPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, BiPoly):
            return RatFun(self, other)
        c = as_gauss(other)
        if c is NotImplemented:
            return NotImplemented
        inv = c.inverse()
        return BiPoly._raw({m: x * inv for m, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def derivative(self, var: str) -> "BiPoly":
        k = _IDX[var]
        out = {}
        for m, c in self.terms.items():
            if m[k]:
                nm = (m[0] - 1, m[1]) if k == 0 else (m[0], m[1] - 1)
                out[nm] = c * m[k]
        return BiPoly._raw(out)

    def divexact(self, g: "BiPoly") -> Optional["BiPoly"]:
        """``self / g`` if ``g`` divides ``self`` exactly, else None."""
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        r = self
        q: Dict[Monomial, GaussRat] = {}
        lm = g.leading_monomial()
        lc_inv = g.leading_coeff().inverse()
        while r:
            m = r.leading_monomial()
            if m[0] < lm[0] or m[1] < lm[1]:
                return None
            qm = (m[0] - lm[0], m[1] - lm[1])
            qc = r.terms[m] * lc_inv
            q[qm] = qc
            r = r - BiPoly._raw({qm: qc}) * g
        return BiPoly._raw(q)

    def compose(self, **images) -> "BiPoly":
        """Substitute polynomials for u and/or v."""
        iu = _coerce(images["u"]) if "u" in images else BiPoly.var("u")
        iv = _coerce(images["v"]) if "v" in images else BiPoly.var("v")
        upow: Dict[int, BiPoly] = {}
        vpow: Dict[int, BiPoly] = {}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = base ** n
            return cache[n]

        result = BiPoly()
        for (a, b), c in self.terms.items():
            result = result + power(upow, iu, a) * power(vpow, iv, b) * c
        return result

    def __call__(self, u=None, v=None) -> GaussRat:
        """Evaluate at constants; both variables the polynomial uses must be given."""
        images = {}
        if u is not None:
            images["u"] = u
        if v is not None:
            images["v"] = v
        r = self.compose(**images)
        if not r.is_constant():
            raise PolyError(f"evaluation of {self} leaves free variables")
        return r.constant_value()

    # text ---------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, m in enumerate(self.monomials()):
            c = self.terms[m]
            mono = "*".join(
                f"{x}^{e}" if e > 1 else x for x, e in zip(VARS, m) if e
            )
            neg = False
            if c.im == 0 and c.re < 0:
                neg, c = True, -c
            elif c.re == 0 and c.im < 0:
                neg, c = True, -c
            if c.im != 0 and c.re != 0:
                cs = f"({c})"
            else:
                cs = str(c)
            if mono:
                body = mono if c == ONE else f"{cs}*{mono}"
            else:
                body = cs
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({self})"


def _coerce(x):
    if isinstance(x, BiPoly):
        return x
    c = as_gauss(x)
    if c is NotImplemented:
        return NotImplemented
    return BiPoly.const(c)


U = BiPoly.var("u")
V = BiPoly.var("v")
_ONE_POLY = BiPoly.const(1)


# gcd --------------------------------------------------------------------


def _uni_rem(f: BiPoly, g: BiPoly, var: str) -> BiPoly:
    """Remainder of f by g, both univariate in ``var`` over Q(i)."""
    dg = g.degree(var)
    lc_inv = g.lc_in(var).constant_value().inverse()
    x = BiPoly.var(var)
    r = f
    while r and r.degree(var) >= dg:
        d = r.degree(var)
        c = r.lc_in(var).constant_value() * lc_inv
        r = r - g * (x ** (d - dg)) * c
    return r


def _uni_gcd(f: BiPoly, g: BiPoly, var: str) -> BiPoly:
    while g:
        f, g = g, _uni_rem(f, g, var)
    return f.monic()


def _content_u(f: BiPoly) -> BiPoly:
    """Monic gcd in Q(i)[v] of the coefficients of f viewed in Q(i)[v][u]."""
    c = BiPoly()
    for coeff in f.coeffs_in("u").values():
        c = _uni_gcd(c, coeff, "v") if c else coeff.monic()
        if c.is_constant():
            return _ONE_POLY
    return c


def _primitive_u(f: BiPoly) -> BiPoly:
    c = _content_u(f)
    return f if c == _ONE_POLY else f.divexact(c)


def _prem_u(a: BiPoly, b: BiPoly) -> BiPoly:
    db = b.degree("u")
    lb = b.lc_in("u")
    r = a
    while r and r.degree("u") >= db:
        d = r.degree("u")
        r = r * lb - r.lc_in("u") * (U ** (d - db)) * b
    return r


def poly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """Monic gcd of two bivariate polynomials."""
    if not f and not g:
        raise PolyError("gcd of two zero polynomials")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return _ONE_POLY
    if f.degree("u") <= 0 and g.degree("u") <= 0:
        return _uni_gcd(f, g, "v")
    cf, cg = _content_u(f), _content_u(g)
    c = _uni_gcd(cf, cg, "v") if not (cf.is_constant() or cg.is_constant()) else _ONE_POLY
    a, b = f.divexact(cf), g.divexact(cg)
    if a.degree("u") < b.degree("u"):
        a, b = b, a
    if b.degree("u") == 0:
        return c
    while b and b.degree("u") > 0:
        r = _prem_u(a, b)
        a, b = b, (_primitive_u(r) if r else r)
    h = _primitive_u(a) if not b else _ONE_POLY
    return (c * h).monic()


# square-free structure ---------------------------------------------------


def _yun(f: BiPoly, var: str) -> List[Tuple[BiPoly, int]]:
    """Square-free decomposition of a monic f all of whose factors involve ``var``."""
    if f.degree(var) <= 0:
        return []
    df = f.derivative(var)
    a0 = poly_gcd(f, df)
    b = f.divexact(a0)
    c = df.divexact(a0)
    d = c - b.derivative(var)
    out = []
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        b = b.divexact(a)
        c = d.divexact(a)
        d = c - b.derivative(var)
        if not a.is_constant():
            out.append((a, i))
        i += 1
    return out


def sqf_list(f: BiPoly) -> Tuple[GaussRat, List[Tuple[BiPoly, int]]]:
    """f = const * prod(a_i ** i) with monic, square-free, pairwise coprime a_i."""
    if not f:
        raise PolyError("square-free decomposition of zero")
    const = f.leading_coeff()
    g = f.monic()
    cont = _content_u(g)
    prim = g if cont == _ONE_POLY else g.divexact(cont)
    parts = _yun(cont, "v") + _yun(prim, "u")
    merged: Dict[int, BiPoly] = {}
    for a, i in parts:
        merged[i] = merged[i] * a if i in merged else a
    return const, [(a, i) for i, a in sorted(merged.items())]


def odd_part(f: BiPoly) -> Tuple[BiPoly, BiPoly, GaussRat]:
    """Write f = const * odd * witness**2 with odd monic and square-free."""
    const, factors = sqf_list(f)
    odd = _ONE_POLY
    witness = _ONE_POLY
    for a, i in factors:
        if i % 2:
            odd = odd * a
        if i >= 2:
            witness = witness * a ** (i // 2)
    return odd, witness.monic(), const


# rational functions -------------------------------------------------------


class RatFun:
    """Reduced fraction num/den with den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _coerce(num)
        den = _ONE_POLY if den is None else _coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFun entries must be polynomials or scalars")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = _ONE_POLY
            else:
                if not den.is_constant():
                    g = poly_gcd(num, den)
                    if g != _ONE_POLY:
                        num, den = num.divexact(g), den.divexact(g)
                lc = den.leading_coeff()
                if lc != ONE:
                    num, den = num / lc, den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def of(cls, x) -> "RatFun":
        return x if isinstance(x, RatFun) else cls(x)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == _ONE_POLY

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise PolyError(f"{self} is not constant")
        return self.num.constant_value()

    def variables(self) -> Tuple[str, ...]:
        used = set(self.num.variables()) | set(self.den.variables())
        return tuple(x for x in VARS if x in used)

    def __add__(self, other) -> "RatFun":
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFun":
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFun":
        return (-self) + other

    def __mul__(self, other) -> "RatFun":
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other) -> "RatFun":
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RatFun":
        return _coerce_rf(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other) -> bool:
        o = _coerce_rf(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    def __str__(self) -> str:
        if self.den == _ONE_POLY:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1 or n.startswith("-") or " " in n:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1 or " " in d or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def sort_key(self) -> str:
        return str(self)


def _coerce_rf(x):
    if isinstance(x, RatFun):
        return x
    p = _coerce(x)
    if p is NotImplemented:
        return NotImplemented
    return RatFun(p, _reduced=True)


# curves, points, divisors -----------------------------------------------------


@dataclass(frozen=True)
class ParamCurve:
    """The curve ``var = image`` where ``image`` is a polynomial in the other variable.

    Restricting along it keeps the other variable as the parameter.
    """

    var: str
    image: BiPoly

    def __post_init__(self):
        if self.var not in _IDX:
            raise PolyError(f"unknown variable {self.var!r}")
        if self.var in self.image.variables():
            raise PolyError("curve image must not involve the substituted variable")

    @property
    def parameter(self) -> str:
        return _other(self.var)

    def __str__(self) -> str:
        return f"{self.var}={self.image}"


@dataclass(frozen=True)
class Point:
    """A point of the plane or of a line; unset coordinates are None."""

    u: Optional[GaussRat] = None
    v: Optional[GaussRat] = None

    def __post_init__(self):
        for name in VARS:
            x = getattr(self, name)
            if x is not None and not isinstance(x, GaussRat):
                object.__setattr__(self, name, as_gauss(x))

    def coords(self) -> Dict[str, GaussRat]:
        return {x: getattr(self, x) for x in VARS if getattr(self, x) is not None}

    def __str__(self) -> str:
        return ", ".join(f"{k}={c}" for k, c in self.coords().items())


class PrimeDivisor:
    """The prime divisor cut out by an irreducible p of degree one in a variable.

    ``p = a*x + b`` with x the designated variable and a, b coprime polynomials
    in the other variable; the residue field is the rational function field of
    the other variable, via ``x -> -b/a``.  ``v`` is designated whenever p has
    degree one in v.
    """

    __slots__ = ("poly", "var", "lead", "tail")

    def __init__(self, poly: BiPoly):
        poly = _coerce(poly)
        if poly.is_constant():
            raise UnsupportedDivisor("a divisor needs a nonconstant polynomial")
        poly = poly.monic()
        if poly.degree("v") == 1:
            var = "v"
        elif poly.degree("u") == 1:
            var = "u"
        else:
            raise UnsupportedDivisor(
                f"{poly} has degree {poly.degree('u')} in u and {poly.degree('v')} in v; "
                "only divisors of degree one in some variable are supported"
            )
        cs = poly.coeffs_in(var)
        lead, tail = cs[1], cs.get(0, BiPoly())
        if tail and not poly_gcd(lead, tail).is_constant():
            raise UnsupportedDivisor(f"{poly} is reducible")
        for name, val in (("poly", poly), ("var", var), ("lead", lead), ("tail", tail)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeDivisor is immutable")

    @property
    def residue_var(self) -> str:
        return _other(self.var)

    def solution(self) -> RatFun:
        return RatFun(-self.tail, self.lead)

    def divides(self, f: BiPoly) -> bool:
        return not _subs_rational(f, self.var, -self.tail, self.lead)[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeDivisor) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(("PrimeDivisor", self.poly))

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"PrimeDivisor({self.poly}=0)"

    def sort_key(self) -> tuple:
        return (self.poly.total_degree(), str(self.poly))


def _subs_rational(f: BiPoly, var: str, num: BiPoly, den: BiPoly) -> Tuple[BiPoly, BiPoly]:
    """f with ``var -> num/den`` as an (unreduced) pair numerator, denominator."""
    cs = f.coeffs_in(var)
    n = max(cs, default=0)
    if den.is_constant() and den.constant_value() == ONE:
        top = cs.get(n, BiPoly())
        for k in range(n - 1, -1, -1):
            top = top * num + cs.get(k, BiPoly())
        return top, den
    # Horner in num with the den powers folded in
    top = cs.get(n, BiPoly())
    dpow = _ONE_POLY
    for k in range(n - 1, -1, -1):
        dpow = dpow * den
        top = top * num + cs.get(k, BiPoly()) * dpow
    return top, dpow


def substitute(f, curve: ParamCurve) -> RatFun:
    """Restrict f to the generic point of ``curve``."""
    f = RatFun.of(f)
    num = f.num.compose(**{curve.var: curve.image})
    den = f.den.compose(**{curve.var: curve.image})
    if not den:
        raise IdenticallyZeroDenominator(f"denominator of {f} vanishes on {curve}")
    return RatFun(num, den)


def _strip(f: BiPoly, p: PrimeDivisor) -> Tuple[int, BiPoly]:
    n = 0
    while p.divides(f):
        f = f.divexact(p.poly)
        n += 1
    return n, f


def _poly_valuation(f: BiPoly, p: PrimeDivisor) -> int:
    return _strip(f, p)[0]


def split_valuation(f, p: PrimeDivisor) -> Tuple[int, RatFun]:
    """``(k, g)`` with ``f = p^k * g`` and g a unit along p."""
    f = RatFun.of(f)
    if not f:
        raise PolyError("valuation of zero")
    kn, num = _strip(f.num, p)
    kd, den = _strip(f.den, p)
    # p is monic, so dividing it out keeps den monic and the pair coprime
    return kn - kd, RatFun(num, den, _reduced=True)


def valuation(f, p: PrimeDivisor) -> int:
    """Order of vanishing of f along p."""
    f = RatFun.of(f)
    if not f:
        raise PolyError("valuation of zero")
    return _poly_valuation(f.num, p) - _poly_valuation(f.den, p)


def reduce_mod(f, p: PrimeDivisor) -> RatFun:
    """Image of a unit f in the residue field of p."""
    f = RatFun.of(f)
    if not f or p.divides(f.num) or p.divides(f.den):
        raise NonUnitAtDivisor(f"{f} is not a unit along {p}=0")
    n1, d1 = _subs_rational(f.num, p.var, -p.tail, p.lead)
    n2, d2 = _subs_rational(f.den, p.var, -p.tail, p.lead)
    return RatFun(n1 * d2, d1 * n2)


def evaluate(f, pt: Point) -> GaussRat:
    """Exact value of f at a point."""
    f = RatFun.of(f)
    coords = pt.coords()
    missing = [x for x in f.variables() if x not in coords]
    if missing:
        raise PolyError(f"point {pt} does not fix {', '.join(missing)}")
    d = f.den(**coords)
    if not d:
        raise PoleAtPoint(f"{f} has a pole at {pt}")
    return f.num(**coords) / d


# divisor support ----------------------------------------------------------------


def _to_sympy(f: BiPoly):
    from sympy import I as SI, Rational, symbols

    su, sv = symbols("u v")
    expr = 0
    for (a, b), c in f.terms.items():
        coeff = Rational(c.re.numerator, c.re.denominator) + SI * Rational(
            c.im.numerator, c.im.denominator
        )
        expr += coeff * su ** a * sv ** b
    return expr, (su, sv)


def _from_sympy(expr, gens) -> BiPoly:
    from sympy import Poly, im, re

    terms = {}
    for m, c in Poly(expr, *gens).terms():
        terms[m] = GaussRat(Fraction(str(re(c))), Fraction(str(im(c))))
    return BiPoly(terms)


def _irreducible_parts(f: BiPoly) -> List[BiPoly]:
    """Monic irreducible factors over Q(i) of a square-free f."""
    from sympy import factor_list

    expr, gens = _to_sympy(f)
    rational = all(c.im == 0 for c in f.terms.values())
    if rational:
        # factor over Q first, then split each Q-irreducible factor over Q(i)
        pieces = [g for g, _ in factor_list(expr, *gens)[1]]
    else:
        pieces = [expr]
    out = []
    for g in pieces:
        for h, _ in factor_list(g, *gens, gaussian=True)[1]:
            out.append(_from_sympy(h, gens).monic())
    return out


@lru_cache(maxsize=4096)
def prime_factors(f: BiPoly) -> Tuple[Tuple[PrimeDivisor, int], ...]:
    """Irreducible factors of f over Q(i), as divisors with multiplicities.

    The square-free split is done here; each square-free part is then
    factored with sympy.  Raises UnsupportedDivisor when a factor has degree
    >= 2 in both variables or is univariate of degree >= 2.
    """
    if not f:
        raise PolyError("factors of zero")
    if f.is_constant():
        return ()
    out = []
    for part, mult in sqf_list(f)[1]:
        for g in _irreducible_parts(part):
            out.append((PrimeDivisor(g), mult))
    out.sort(key=lambda t: t[0].sort_key())
    return tuple(out)


def support(entries: Iterable) -> List[PrimeDivisor]:
    """Union of the divisor supports of numerators and denominators."""
    seen = {}
    for e in entries:
        e = RatFun.of(e)
        for part in (e.num, e.den):
            for p, _ in prime_factors(part):
                seen[p] = p
    return sorted(seen.values(), key=lambda p: p.sort_key())
