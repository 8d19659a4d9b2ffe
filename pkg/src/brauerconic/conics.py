"""Ternary quadratic forms, their conics, and the quaternion symbol of a conic.

The conic a X^2 + b Y^2 + c T^2 = 0 is sent to the symbol (-ab, -ac): scale
the equation by a and absorb squares.  Two conics over Q(i)(u, v) are
isomorphic exactly when their symbols agree, which is decided through
:func:`~brauerconic.brclass.class_equal_certified`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .brclass import ComparisonResult, class_equal_certified, normalize_symbol
from .gauss import GaussRat
from .poly import ParamCurve, Point, RatFun
from .search import find_isotropic
from .symbols import BrClass, QSymbol

__all__ = [
    "ConicError",
    "DegenerateForm",
    "PointNotOnConic",
    "TernaryForm",
    "ConicPoint",
    "Parametrization",
    "ModelChart",
    "diagonalize",
    "symbol_of_form",
    "conic_symbol",
    "conics_isomorphic",
    "point_search",
    "parametrize",
    "model_bundle_chart",
]

Matrix = List[List[RatFun]]


class ConicError(ValueError):
    pass


class DegenerateForm(ConicError):
    pass


class PointNotOnConic(ConicError):
    pass


def _det3(m: Sequence[Sequence[RatFun]]) -> RatFun:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(3)), RatFun(0)) for j in range(3)] for i in range(3)]


def _transpose(a: Matrix) -> Matrix:
    return [[a[j][i] for j in range(3)] for i in range(3)]


def _identity() -> Matrix:
    return [[RatFun(1 if i == j else 0) for j in range(3)] for i in range(3)]


class TernaryForm:
    """Symmetric Gram matrix of a ternary quadratic form; off-diagonals are halved."""

    __slots__ = ("matrix", "names")

    def __init__(self, matrix, names: Tuple[str, str, str] = ("X", "Y", "T")):
        m = [[RatFun.of(matrix[i][j]) for j in range(3)] for i in range(3)]
        for i in range(3):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ConicError("Gram matrix must be symmetric")
        if not _det3(m):
            raise DegenerateForm("form has zero determinant")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "names", tuple(names))

    def __setattr__(self, name, value):
        raise AttributeError("TernaryForm is immutable")

    @classmethod
    def diagonal(cls, a, b, c, names=("X", "Y", "T")) -> "TernaryForm":
        z = RatFun(0)
        return cls([[a, z, z], [z, b, z], [z, z, c]], names)

    @classmethod
    def from_coefficients(cls, coeffs: Dict[Tuple[int, int, int], RatFun], names=("X", "Y", "T")):
        """Build from ``{exponent triple: coefficient}`` of a quadratic form."""
        m = [[RatFun(0)] * 3 for _ in range(3)]
        for e, c in coeffs.items():
            if sum(e) != 2 or any(x < 0 for x in e):
                raise ConicError(f"monomial exponents {e} are not quadratic")
            idx = [i for i in range(3) for _ in range(e[i])]
            i, j = idx
            if i == j:
                m[i][i] = m[i][i] + c
            else:
                half = RatFun.of(c) / 2
                m[i][j] = m[i][j] + half
                m[j][i] = m[j][i] + half
        return cls(m, names)

    def is_diagonal(self) -> bool:
        return all(not self.matrix[i][j] for i in range(3) for j in range(3) if i != j)

    def is_constant(self) -> bool:
        return all(x.is_constant() for row in self.matrix for x in row)

    def determinant(self) -> RatFun:
        return _det3(self.matrix)

    def value(self, pt: Sequence) -> RatFun:
        pt = [RatFun.of(x) for x in pt]
        total = RatFun(0)
        for i in range(3):
            for j in range(3):
                if self.matrix[i][j]:
                    total = total + self.matrix[i][j] * pt[i] * pt[j]
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, TernaryForm) and self.matrix == other.matrix

    def __str__(self) -> str:
        parts = []
        for i in range(3):
            for j in range(i, 3):
                c = self.matrix[i][j] * (1 if i == j else 2)
                if not c:
                    continue
                mono = f"{self.names[i]}^2" if i == j else f"{self.names[i]}*{self.names[j]}"
                parts.append(f"({c})*{mono}")
        return " + ".join(parts) if parts else "0"


def diagonalize(q: TernaryForm) -> Tuple[Tuple[RatFun, RatFun, RatFun], Matrix]:
    """Congruent diagonal form and basis change ``P`` with ``P^T M P`` diagonal.

    Pivot on the first nonzero diagonal entry; when every remaining diagonal
    entry vanishes, add the basis vector of the first nonzero off-diagonal
    entry of the current row.
    """
    m = [row[:] for row in q.matrix]
    p = _identity()

    def congruence(e: Matrix):
        nonlocal m, p
        m = _matmul(_matmul(_transpose(e), m), e)
        p = _matmul(p, e)

    for k in range(3):
        if not m[k][k]:
            j = next((j for j in range(k + 1, 3) if m[j][j]), None)
            if j is not None:
                e = _identity()
                e[k][k], e[j][j], e[k][j], e[j][k] = RatFun(0), RatFun(0), RatFun(1), RatFun(1)
                congruence(e)
            else:
                j = next((j for j in range(k + 1, 3) if m[k][j]), None)
                if j is None:
                    raise DegenerateForm("form is degenerate")
                e = _identity()
                e[j][k] = RatFun(1)
                congruence(e)
        for j in range(k + 1, 3):
            if m[j][k]:
                e = _identity()
                e[k][j] = -(m[k][j] / m[k][k])
                congruence(e)
    return (m[0][0], m[1][1], m[2][2]), p


def symbol_of_form(diag: Sequence) -> QSymbol:
    """(-ab, -ac) for the diagonal form <a, b, c>, square factors stripped."""
    a, b, c = (RatFun.of(x) for x in diag)
    if not (a and b and c):
        raise ConicError("diagonal coefficients must be nonzero")
    return normalize_symbol(QSymbol(-a * b, -a * c))


def conic_symbol(q: TernaryForm) -> QSymbol:
    return symbol_of_form(diagonalize(q)[0])


def conics_isomorphic(
    q1: TernaryForm, q2: TernaryForm, curve: ParamCurve, pt: Point, height_bound: int = 50
) -> ComparisonResult:
    """"Equal" means the two conics are isomorphic over Q(i)(u, v)."""
    x = BrClass([conic_symbol(q1)])
    y = BrClass([conic_symbol(q2)])
    return class_equal_certified(x, y, curve, pt, height_bound)


@dataclass(frozen=True)
class ConicPoint:
    coords: Tuple[RatFun, RatFun, RatFun]

    def __post_init__(self):
        c = tuple(RatFun.of(x) for x in self.coords)
        if not any(c):
            raise ConicError("projective point with all coordinates zero")
        object.__setattr__(self, "coords", c)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


def point_search(q: TernaryForm, height_bound: int = 50) -> Optional[ConicPoint]:
    """Minimal isotropic vector with Gaussian-integer coordinates of norm <= bound."""
    if not q.is_constant():
        raise ConicError("point search needs a form with constant coefficients")
    m = [[x.constant_value() for x in row] for row in q.matrix]
    found = find_isotropic(m, height_bound)
    return None if found is None else ConicPoint(found)


# parametrization ------------------------------------------------------------------

# homogeneous polynomials in the parameters (s, t): {(deg_s, deg_t): RatFun}
STPoly = Dict[Tuple[int, int], RatFun]


def _st_add(*ps: STPoly) -> STPoly:
    out: STPoly = {}
    for p in ps:
        for m, c in p.items():
            out[m] = out.get(m, RatFun(0)) + c
    return {m: c for m, c in out.items() if c}


def _st_mul(p: STPoly, q: STPoly) -> STPoly:
    out: STPoly = {}
    for (a, b), c in p.items():
        for (x, y), d in q.items():
            m = (a + x, b + y)
            out[m] = out.get(m, RatFun(0)) + c * d
    return {m: c for m, c in out.items() if c}


def _st_scale(p: STPoly, c) -> STPoly:
    return {m: x * c for m, x in p.items() if x * c}


@dataclass(frozen=True)
class Parametrization:
    form: TernaryForm
    base_point: ConicPoint
    coords: Tuple[STPoly, STPoly, STPoly]

    def verification_polynomial(self) -> STPoly:
        """q(X(s,t), Y(s,t), T(s,t)) as a polynomial in s, t; zero when correct."""
        m = self.form.matrix
        total: STPoly = {}
        for i, j in product(range(3), repeat=2):
            if m[i][j]:
                total = _st_add(total, _st_scale(_st_mul(self.coords[i], self.coords[j]), m[i][j]))
        return total

    def is_proper(self) -> bool:
        """The three quadratics are linearly independent (image not in a line)."""
        monos = [(2, 0), (1, 1), (0, 2)]
        rows = [[c.get(mo, RatFun(0)) for mo in monos] for c in self.coords]
        return bool(_det3(rows))

    def at(self, s, t) -> Tuple[RatFun, RatFun, RatFun]:
        s, t = RatFun.of(s), RatFun.of(t)
        return tuple(
            sum((c * s ** a * t ** b for (a, b), c in poly.items()), RatFun(0)) for poly in self.coords
        )

    def to_dict(self) -> dict:
        def fmt(poly: STPoly) -> str:
            if not poly:
                return "0"
            parts = []
            for (a, b), c in sorted(poly.items(), reverse=True):
                mono = "*".join(x for x in (("s^2" if a == 2 else "s" if a else ""), ("t^2" if b == 2 else "t" if b else "")) if x)
                parts.append(f"({c})*{mono}")
            return " + ".join(parts)

        return {
            "form": str(self.form),
            "base_point": str(self.base_point),
            "coordinates": [fmt(c) for c in self.coords],
            "verification_polynomial": "0" if not self.verification_polynomial() else "nonzero",
            "proper": self.is_proper(),
        }


def parametrize(q: TernaryForm, p: ConicPoint) -> Parametrization:
    """Second intersection of the conic with the pencil of lines through ``p``.

    For a direction R(s, t) spanning a plane complementary to p, the point
    q(R) p - 2 B(p, R) R lies on the conic, B being the polar bilinear form.
    """
    if q.value(p.coords):
        raise PointNotOnConic(f"{p} does not lie on the conic")
    m = q.matrix
    pivot = next(i for i in range(3) if p.coords[i])
    j, k = [i for i in range(3) if i != pivot]
    s_, t_ = {(1, 0): RatFun(1)}, {(0, 1): RatFun(1)}
    direction = {j: s_, k: t_}
    qr = _st_add(
        _st_scale(_st_mul(s_, s_), m[j][j]),
        _st_scale(_st_mul(s_, t_), m[j][k] * 2),
        _st_scale(_st_mul(t_, t_), m[k][k]),
    )
    mp = [sum((m[i][l] * p.coords[l] for l in range(3)), RatFun(0)) for i in range(3)]
    bpr = _st_add(_st_scale(s_, mp[j]), _st_scale(t_, mp[k]))
    coords = []
    for i in range(3):
        term = _st_scale(qr, p.coords[i])
        if i in direction:
            term = _st_add(term, _st_scale(_st_mul(bpr, direction[i]), -2))
        coords.append(term)
    par = Parametrization(q, p, tuple(coords))
    if par.verification_polynomial():
        raise ConicError("parametrization failed its identity check")
    return par


# the model chart -----------------------------------------------------------------

_CHART_VARS = ("s", "t", "u", "v")


class _MPoly:
    """Minimal polynomial in s, t, u, v over Q(i), for the chart identities."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: GaussRat(0) + c for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, name):
        e = [0, 0, 0, 0]
        e[_CHART_VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0, 0): c})

    def __add__(self, o):
        o = o if isinstance(o, _MPoly) else _MPoly.const(o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, GaussRat(0)) + c
        return _MPoly(out)

    def __neg__(self):
        return _MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-(o if isinstance(o, _MPoly) else _MPoly.const(o)))

    def __mul__(self, o):
        o = o if isinstance(o, _MPoly) else _MPoly.const(o)
        out = {}
        for m, c in self.terms.items():
            for n, d in o.terms.items():
                k = tuple(x + y for x, y in zip(m, n))
                out[k] = out.get(k, GaussRat(0)) + c * d
        return _MPoly(out)

    __rmul__ = __mul__

    def compose(self, images: Sequence["_MPoly"]) -> "_MPoly":
        result = _MPoly()
        for m, c in self.terms.items():
            term = _MPoly.const(c)
            for img, e in zip(images, m):
                for _ in range(e):
                    term = term * img
            result = result + term
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, *vals):
        return self.compose([_MPoly.const(x) for x in vals]).terms.get((0, 0, 0, 0), GaussRat(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{x}^{e}" if e > 1 else x for x, e in zip(_CHART_VARS, m) if e)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


@dataclass(frozen=True)
class ModelChart:
    """Mutually inverse maps between A^3 (s, t, u) and s^2 - u t^2 - v = 1."""

    equation: _MPoly
    forward: Tuple[_MPoly, ...]
    backward: Tuple[_MPoly, ...]

    def image_identity(self) -> _MPoly:
        """The equation composed with the forward map."""
        return self.equation.compose(self.forward)

    def round_trip_identity(self) -> List[_MPoly]:
        """backward(forward(s, t, u)) - (s, t, u), coordinatewise."""
        fw = list(self.forward)
        return [b.compose(fw) - _MPoly.var(x) for b, x in zip(self.backward, _CHART_VARS[:3])]

    def section_identity(self) -> _MPoly:
        """forward(backward(p))_v - v equals the equation itself, so it vanishes on the variety."""
        bw = list(self.backward) + [_MPoly.var("v")]
        return self.forward[3].compose(bw) - _MPoly.var("v") - self.equation

    def verified(self) -> bool:
        return (
            self.image_identity().is_zero()
            and all(p.is_zero() for p in self.round_trip_identity())
            and self.section_identity().is_zero()
        )

    def apply_forward(self, s, t, u):
        return tuple(f(s, t, u, 0) for f in self.forward)

    def apply_backward(self, s, t, u, v):
        return tuple(b(s, t, u, v) for b in self.backward)

    def to_dict(self) -> dict:
        return {
            "equation": f"{self.equation} = 0",
            "forward": [str(f) for f in self.forward],
            "backward": [str(b) for b in self.backward],
            "image_identity": str(self.image_identity()),
            "round_trip_identity": [str(p) for p in self.round_trip_identity()],
            "section_identity": str(self.section_identity()),
        }


def model_bundle_chart() -> ModelChart:
    s, t, u, v = (_MPoly.var(x) for x in _CHART_VARS)
    equation = s * s - u * t * t - v - 1
    forward = (s, t, u, s * s - u * t * t - 1)
    backward = (s, t, u)
    return ModelChart(equation, forward, backward)
