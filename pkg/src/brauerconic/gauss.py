"""Exact arithmetic in the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction`, which already keeps numerator and
denominator reduced with a positive denominator.  :class:`GaussRat` pairs two
of them.  The module also decides squareness exactly and computes a canonical
representative of the square class of a nonzero element.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational
from typing import Optional, Union

from sympy import factorint

__all__ = [
    "GaussRat",
    "ZERO",
    "ONE",
    "I",
    "as_gauss",
    "rational_sqrt",
    "gauss_is_square",
    "square_class_rep",
    "same_square_class",
    "reduced_constant",
]

Scalar = Union["GaussRat", int, Fraction]


_FZERO = Fraction(0)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussRat:
    """An element ``re + im*i`` of Q(i), immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # arithmetic -------------------------------------------------------
    def __add__(self, other: Scalar) -> "GaussRat":
        o = as_gauss(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return GaussRat(self.re + o.re, _FZERO)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> "GaussRat":
        o = as_gauss(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return GaussRat(self.re - o.re, _FZERO)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> "GaussRat":
        return -self + other

    def __mul__(self, other: Scalar) -> "GaussRat":
        o = as_gauss(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return GaussRat(self.re * o.re, _FZERO)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        if not self.im:
            return GaussRat(1 / self.re, _FZERO)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other: Scalar) -> "GaussRat":
        o = as_gauss(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "GaussRat":
        return as_gauss(other) * self.inverse()

    def __pow__(self, n: int) -> "GaussRat":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_rational(self) -> bool:
        return self.im == 0

    def __eq__(self, other) -> bool:
        o = as_gauss(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self) -> tuple:
        return (self.re, self.im)

    # text -------------------------------------------------------------
    def __str__(self) -> str:
        """Canonical text form, e.g. ``3``, ``-i``, ``1/2 + 3/4*i``."""
        if self.im == 0:
            return _frac_str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{_frac_str(self.im)}*i"
        if self.re == 0:
            return imag
        if imag.startswith("-"):
            return f"{_frac_str(self.re)} - {imag[1:]}"
        return f"{_frac_str(self.re)} + {imag}"

    def __repr__(self) -> str:
        return f"GaussRat({self})"


def as_gauss(x) -> "GaussRat":
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return GaussRat(Fraction(x))
    if isinstance(x, complex):
        return GaussRat(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q`` if it exists."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gauss_is_square(c: Scalar) -> Optional[GaussRat]:
    """Return ``w`` with ``w*w == c`` if ``c`` is a square in Q(i), else None.

    The witness is normalized to have positive real part, or zero real part
    and positive imaginary part.
    """
    c = as_gauss(c)
    if not c:
        raise ValueError("squareness of zero is not decided")
    a, b = c.re, c.im
    if b == 0:
        r = rational_sqrt(a)
        if r is not None:
            return GaussRat(r)
        r = rational_sqrt(-a)
        if r is not None:
            return GaussRat(0, r)
        return None
    n = rational_sqrt(a * a + b * b)
    if n is None:
        return None
    x = rational_sqrt((a + n) / 2)
    if x is None:
        return None
    return GaussRat(x, b / (2 * x))


# square classes ---------------------------------------------------------
# Gaussian integers are handled as (re, im) int pairs below.


def _gmul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _gdivexact(z, w):
    """z / w when the quotient is a Gaussian integer, else None."""
    n = w[0] * w[0] + w[1] * w[1]
    re = z[0] * w[0] + z[1] * w[1]
    im = z[1] * w[0] - z[0] * w[1]
    if re % n or im % n:
        return None
    return (re // n, im // n)


def _gmod(z, w):
    n = w[0] * w[0] + w[1] * w[1]
    re = z[0] * w[0] + z[1] * w[1]
    im = z[1] * w[0] - z[0] * w[1]
    # nearest-integer quotient
    q = ((2 * re + n) // (2 * n), (2 * im + n) // (2 * n))
    qw = _gmul(q, w)
    return (z[0] - qw[0], z[1] - qw[1])


def _first_quadrant(z):
    a, b = z
    while not (a > 0 and b >= 0):
        a, b = -b, a
    return (a, b)


@lru_cache(maxsize=None)
def _split_prime(p: int):
    """The two first-quadrant Gaussian primes above a prime p = 1 mod 4."""
    g = 2
    while pow(g, (p - 1) // 2, p) != p - 1:
        g += 1
    r = pow(g, (p - 1) // 4, p)
    a, b = (p, 0), (r, 1)
    while b != (0, 0):
        a, b = b, _gmod(a, b)
    x, y = _first_quadrant(a)
    return (x, y), (y, x)


def square_class_rep(c: Scalar) -> GaussRat:
    """Canonical representative of the class of ``c`` in Q(i)^x / Q(i)^x^2.

    Squares map to 1.  The representative is a product of normalized
    Gaussian primes, rewritten so that a positive square-free integer is its
    own representative (``-1`` is a square and ``i`` lies in the class of 2).
    """
    c = as_gauss(c)
    if not c:
        raise ValueError("square class of zero")
    d = c.re.denominator * c.im.denominator // gcd(c.re.denominator, c.im.denominator)
    # c * d^2 lies in the same class and is (re + im*i) * d with integral re, im
    z = (int(c.re * d) * d, int(c.im * d) * d)
    norm = z[0] * z[0] + z[1] * z[1]
    i_exp = 0
    tokens = []
    primes = []
    for p in sorted(factorint(norm)):
        if p == 2:
            primes.append((1, 1))
        elif p % 4 == 3:
            primes.append((p, 0))
        else:
            primes.extend(_split_prime(p))
    odd = []
    for pi in primes:
        e = 0
        while True:
            q = _gdivexact(z, pi)
            if q is None:
                break
            z, e = q, e + 1
        if e % 2:
            odd.append(pi)
    # z is now a unit; -1 is a square so only the i-part matters
    if z[1] != 0:
        i_exp ^= 1
    oddset = set(odd)
    for pi in odd:
        x, y = pi
        if pi == (1, 1) or y == 0:
            tokens.append(GaussRat(x, y))
        elif (y, x) in oddset:
            if x > y:
                # (x+yi)(y+xi) = p*i
                tokens.append(GaussRat(x * x + y * y))
                i_exp ^= 1
        else:
            tokens.append(GaussRat(x, y))
    rep = GaussRat(2) if i_exp else ONE
    for t in tokens:
        rep = rep * t
    return rep


def same_square_class(a: Scalar, b: Scalar) -> bool:
    """True when ``a/b`` is a square in Q(i)."""
    return gauss_is_square(as_gauss(a) / as_gauss(b)) is not None


def _squarefree_kernel(n: int) -> int:
    k = 1
    for p, e in factorint(n).items():
        if e % 2:
            k *= p
    return k


def reduced_constant(c: Scalar) -> GaussRat:
    """A representative of the square class of ``c`` that keeps rational signs.

    Rationals map to ``sign * squarefree`` integers (so ``-2`` stays ``-2``);
    other elements map to :func:`square_class_rep`.  Idempotent.
    """
    c = as_gauss(c)
    if not c:
        raise ValueError("square class of zero")
    if c.im:
        return square_class_rep(c)
    q = c.re
    k = _squarefree_kernel(abs(q.numerator) * q.denominator)
    return GaussRat(k if q > 0 else -k)
