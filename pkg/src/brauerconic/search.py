"""Bounded search for isotropic vectors of a ternary form over Q(i).

Coordinates (X, Y, T) are Gaussian integers of norm at most ``bound``.  The
witness returned is the minimum of a fixed total order:

1. the largest coordinate norm;
2. points with X != 0 before points with X == 0;
3. X, then T, then Y, each compared by :func:`gkey` (0 first, then by norm).

The first nonzero of X, T, Y must satisfy re > 0 and im >= 0, which picks
one representative per line up to units.  For each (X, T) the equation is
solved for Y exactly in Gaussian integers, so the cost is quadratic in the
number of candidates.
"""

from __future__ import annotations

from math import isqrt, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .gauss import ZERO, GaussRat

__all__ = ["gaussian_integers", "find_isotropic", "form_value", "gkey"]

GInt = Tuple[int, int]


def gkey(z: GInt) -> tuple:
    re, im = z
    return (re * re + im * im, -re, -im)


def gaussian_integers(bound: int) -> List[GInt]:
    r = isqrt(bound)
    pts = [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1) if a * a + b * b <= bound]
    pts.sort(key=gkey)
    return pts


def _norm(z: GInt) -> int:
    return z[0] * z[0] + z[1] * z[1]


def _mul(z: GInt, w: GInt) -> GInt:
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _add(*zs: GInt) -> GInt:
    return (sum(z[0] for z in zs), sum(z[1] for z in zs))


def _div(z: GInt, w: GInt) -> Optional[GInt]:
    n = _norm(w)
    re = z[0] * w[0] + z[1] * w[1]
    im = z[1] * w[0] - z[0] * w[1]
    if re % n or im % n:
        return None
    return (re // n, im // n)


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _gsqrt(z: GInt) -> Optional[GInt]:
    a, b = z
    if b == 0:
        r = _isqrt_exact(a)
        if r is not None:
            return (r, 0)
        r = _isqrt_exact(-a)
        return None if r is None else (0, r)
    n = _isqrt_exact(a * a + b * b)
    if n is None or (a + n) % 2:
        return None
    x = _isqrt_exact((a + n) // 2)
    if not x or b % (2 * x):
        return None
    return (x, b // (2 * x))


def _normalized(x: GInt, t: GInt, y: GInt) -> bool:
    for z in (x, t, y):
        if z != (0, 0):
            return z[0] > 0 and z[1] >= 0
    return False


def _integral_matrix(m: Sequence[Sequence[GaussRat]]) -> List[List[GInt]]:
    d = 1
    for row in m:
        for c in row:
            d = lcm(d, c.re.denominator, c.im.denominator)
    return [[(int(c.re * d), int(c.im * d)) for c in row] for row in m]


def _solve_y(m: List[List[GInt]], x: GInt, t: GInt) -> Optional[List[GInt]]:
    """Gaussian-integer roots Y of q(x, Y, t) = 0; None means every Y works."""
    a = m[1][1]
    b2 = _add(_mul(m[0][1], x), _mul(m[1][2], t))  # b = 2 * b2
    c = _add(
        _mul(m[0][0], _mul(x, x)),
        _mul((2 * m[0][2][0], 2 * m[0][2][1]), _mul(x, t)),
        _mul(m[2][2], _mul(t, t)),
    )
    if a != (0, 0):
        # roots (-b2 +- sqrt(b2^2 - a c)) / a
        disc = _add(_mul(b2, b2), _mul((-a[0], -a[1]), c))
        w = _gsqrt(disc)
        if w is None:
            return []
        roots = [_div(_add((-b2[0], -b2[1]), w), a), _div(_add((-b2[0], -b2[1]), (-w[0], -w[1])), a)]
    elif b2 != (0, 0):
        roots = [_div((-c[0], -c[1]), (2 * b2[0], 2 * b2[1]))]
    elif c == (0, 0):
        return None
    else:
        return []
    out = []
    for r in roots:
        if r is not None and r not in out:
            out.append(r)
    return out


def find_isotropic(
    m: Sequence[Sequence[GaussRat]], bound: int
) -> Optional[Tuple[GaussRat, GaussRat, GaussRat]]:
    """Minimal (X, Y, T) with ``v^T m v = 0`` and coordinate norms <= bound."""
    mi = _integral_matrix(m)
    cands = gaussian_integers(bound)
    by_norm: Dict[int, List[GInt]] = {}
    for z in cands:
        by_norm.setdefault(_norm(z), []).append(z)
    inner: List[GInt] = []
    solved: List[Tuple[GInt, GInt, Optional[List[GInt]]]] = []
    for shell in sorted(by_norm):
        fresh = by_norm[shell]
        old = list(inner)
        inner.extend(fresh)
        for x in inner:
            for t in (fresh if x in old else inner):
                solved.append((x, t, _solve_y(mi, x, t)))
        best = None
        for x, t, ys in solved:
            top = max(_norm(x), _norm(t))
            for y in inner if ys is None else ys:
                ny = _norm(y)
                if ny > shell or max(top, ny) != shell or not _normalized(x, t, y):
                    continue
                k = (x == (0, 0), gkey(x), gkey(t), gkey(y))
                if best is None or k < best[0]:
                    best = (k, (x, y, t))
        if best is not None:
            return tuple(GaussRat(*z) for z in best[1])
    return None


def form_value(m: Sequence[Sequence[GaussRat]], pt) -> GaussRat:
    total = ZERO
    for i in range(3):
        for j in range(3):
            total = total + m[i][j] * pt[i] * pt[j]
    return total
