import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from brauerconic.gauss import GaussRat
from brauerconic.poly import (
    U,
    V,
    BiPoly,
    IdenticallyZeroDenominator,
    NonUnitAtDivisor,
    ParamCurve,
    PoleAtPoint,
    Point,
    PolyError,
    PrimeDivisor,
    RatFun,
    evaluate,
    odd_part,
    poly_gcd,
    prime_factors,
    reduce_mod,
    sqf_list,
    substitute,
    valuation,
)

I = GaussRat(0, 1)
D = ParamCurve("v", 1 - U)

small = st.integers(-3, 3)
coef = st.builds(GaussRat, small, st.integers(-1, 1))
monos = st.tuples(st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monos, coef, max_size=4).map(BiPoly)
nonzero_polys = polys.filter(bool)


def test_canonical_printing():
    f = U * V * (U ** 2 - 1) * (V ** 2 - 1)
    assert str(f) == "u^3*v^3 - u^3*v - u*v^3 + u*v"
    assert str((1 + I) * U) == "(1 + i)*u"
    assert str(BiPoly()) == "0"
    assert BiPoly({(1, 0): GaussRat(0)}) == BiPoly()


def test_gcd_examples():
    assert poly_gcd(U ** 2 - 1, U ** 2 - 2 * U + 1) == U - 1
    assert poly_gcd(U * V, U + V) == 1
    assert poly_gcd(U ** 2 - V ** 2, U - V) == U - V
    with pytest.raises(PolyError):
        poly_gcd(BiPoly(), BiPoly())


def _to_sympy(f):
    u, v = sympy.symbols("u v")
    return sympy.sympify(str(f).replace("^", "**"), locals={"u": u, "v": v, "i": sympy.I})


def test_gcd_against_sympy():
    rng = random.Random(7)
    u, v = sympy.symbols("u v")
    pool = [U - 1, U + V, V ** 2 + U, U * V - 2, V - 3, U ** 2 + 1, U - V + 2]
    for _ in range(60):
        common = BiPoly.const(1)
        for _ in range(rng.randint(0, 2)):
            common = common * rng.choice(pool)
        f, g = common, common
        for _ in range(rng.randint(0, 2)):
            f = f * rng.choice(pool)
        for _ in range(rng.randint(0, 2)):
            g = g * rng.choice(pool)
        ours = poly_gcd(f, g)
        ref = sympy.Poly(sympy.gcd(_to_sympy(f), _to_sympy(g)), u, v)
        ref = sympy.expand(ref.as_expr() / ref.LC(order="lex"))
        assert sympy.expand(_to_sympy(ours) - ref) == 0, (f, g, ours, ref)
        assert f.divexact(ours) is not None and g.divexact(ours) is not None


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(f, g):
    h = poly_gcd(f, g)
    assert f.divexact(h) is not None
    assert g.divexact(h) is not None
    assert h.leading_coeff() == 1


@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == BiPoly()


def test_odd_part_examples():
    f = U * (1 - U) * (U ** 2 - 1) * (U ** 2 - 2 * U)
    odd, w, c = odd_part(f)
    assert odd == (U + 1) * (U - 2)
    assert c == -1
    assert w == U * (U - 1)
    assert odd_part((U - 1) ** 2) == (BiPoly.const(1), U - 1, GaussRat(1))
    g = U * (U ** 2 - 2 * U) * (1 - 2 * U)
    odd, w, c = odd_part(g)
    assert odd == (U - 2) * (U - GaussRat(1) / 2)
    assert w == U
    assert c * odd * w * w == g


def test_odd_part_reconstruction_on_linear_products():
    rng = random.Random(11)
    lin = [U, V, U - 1, U + V, V + 2, U - 2 * V + 1, 2 * U + 3]
    for _ in range(200):
        f = BiPoly.const(rng.choice([1, -1, 2, -3, I, 1 + I]))
        for p in lin:
            f = f * p ** rng.randint(0, 3)
        odd, w, c = odd_part(f)
        assert c * odd * w * w == f
        assert odd.is_constant() or odd.leading_coeff() == 1
        # square-free in characteristic 0: no common factor with both partials
        g = odd
        for x in ("u", "v"):
            if odd.derivative(x):
                g = poly_gcd(g, odd.derivative(x))
        assert g.is_constant()


def test_sqf_list_multiplicities():
    f = (U - 1) ** 3 * (U + V) ** 2 * V
    c, parts = sqf_list(f)
    prod = BiPoly.const(c)
    for a, k in parts:
        prod = prod * a ** k
    assert prod == f
    assert sorted(k for _, k in parts) == [1, 2, 3]


def test_substitute_examples():
    a = U * V * (U ** 2 - 1) * (V ** 2 - 1)
    b = U * (V ** 2 - 1) * (V ** 2 - U ** 2)
    assert substitute(a, D) == RatFun(U * (1 - U) * (U ** 2 - 1) * (U ** 2 - 2 * U))
    assert substitute(b, D) == RatFun(U * (U ** 2 - 2 * U) * (1 - 2 * U))
    assert substitute(RatFun(5), D) == RatFun(5)
    with pytest.raises(IdenticallyZeroDenominator):
        substitute(RatFun(1, U + V - 1), D)


@given(polys, polys)
def test_substitute_is_multiplicative(f, g):
    assert substitute(f * g, D) == substitute(f, D) * substitute(g, D)


def test_reduce_mod_examples():
    pu = PrimeDivisor(U)
    assert reduce_mod(RatFun(V), pu) == RatFun(V)
    assert reduce_mod(RatFun((U + 1) * (U - 2)), pu) == RatFun(-2)
    with pytest.raises(NonUnitAtDivisor):
        reduce_mod(RatFun(U), pu)


@given(nonzero_polys, st.integers(-5, 5))
def test_reduce_mod_agrees_with_evaluate(f, v0):
    pu = PrimeDivisor(U)
    if pu.divides(f):
        return
    r = reduce_mod(RatFun(f), pu)
    assert evaluate(r, Point(v=v0)) == evaluate(f, Point(u=0, v=v0))


def test_evaluate_examples():
    a = U * V * (U ** 2 - 1) * (V ** 2 - 1)
    b = U * (V ** 2 - 1) * (V ** 2 - U ** 2)
    assert evaluate(a, Point(2, 3)) == 144
    assert evaluate(b, Point(2, 3)) == 80
    assert evaluate(U, Point(0, 1)) == 0
    with pytest.raises(PoleAtPoint):
        evaluate(RatFun(1, U), Point(0, 1))


def test_valuation_examples():
    pu = PrimeDivisor(U)
    assert valuation(U * V * (U ** 2 - 1) * (V ** 2 - 1), pu) == 1
    assert valuation(U * (V ** 2 - 1) * (V ** 2 - U ** 2), PrimeDivisor(V - 1)) == 1
    assert valuation(RatFun(U ** 2, V), pu) == 2
    assert valuation(RatFun(V, U ** 3), pu) == -3
    with pytest.raises(PolyError):
        valuation(RatFun(0), pu)


def test_prime_divisor_shapes():
    p = PrimeDivisor(U - V)
    assert p.var == "v" and p.residue_var == "u"
    q = PrimeDivisor(2 * U + 4)
    assert q.poly == U + 2
    r = PrimeDivisor(U * V + 1)
    assert r.var == "v"
    with pytest.raises(PolyError):
        PrimeDivisor(U ** 2 + V ** 2 + 1)


def test_prime_factors_over_gaussian_integers():
    f = (U ** 2 + 1) * (U - V) * (U + V) ** 2
    found = {str(p): k for p, k in prime_factors(f)}
    assert found == {"u - i": 1, "u + i": 1, "u - v": 1, "u + v": 2}


def test_ratfun_reduced():
    f = RatFun(U ** 2 - 1, 2 * U - 2)
    assert f.num == (U + 1) / 2 and f.den == 1
    assert RatFun(U, U * V) == RatFun(1, V)
    with pytest.raises(ZeroDivisionError):
        RatFun(1, 0)
