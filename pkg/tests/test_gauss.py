from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brauerconic.gauss import (
    GaussRat,
    gauss_is_square,
    reduced_constant,
    same_square_class,
    square_class_rep,
)

from oracles import two_is_square_case_split

I = GaussRat(0, 1)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gauss = st.builds(GaussRat, rats, rats)
nonzero = gauss.filter(bool)


def test_canonical_fractions():
    z = GaussRat(Fraction(2, 4), Fraction(-6, 8))
    assert z.re == Fraction(1, 2) and z.im == Fraction(-3, 4)
    assert str(z) == "1/2 - 3/4*i"
    assert str(GaussRat(0, -1)) == "-i"
    assert str(GaussRat(3)) == "3"
    assert str(GaussRat(Fraction(1, 2), Fraction(3, 4))) == "1/2 + 3/4*i"


def test_i_squared():
    assert I * I == GaussRat(-1)
    assert (1 + I) ** 2 == 2 * I
    assert GaussRat(3, 4).norm() == 25
    assert GaussRat(3, 4) * GaussRat(3, 4).inverse() == 1


def test_square_examples():
    assert gauss_is_square(144) == GaussRat(12)
    assert gauss_is_square(-1) == I
    assert gauss_is_square(2) is None
    assert gauss_is_square(-4) == GaussRat(0, 2)
    assert gauss_is_square(2 * I) == GaussRat(1, 1)
    assert gauss_is_square(GaussRat(-7, 24)) == GaussRat(3, 4)


def test_two_is_not_a_square_by_case_split():
    # the case split finds no rational solution, and neither does the library
    assert two_is_square_case_split() == []
    assert gauss_is_square(2) is None


def test_zero_rejected():
    with pytest.raises(ValueError):
        gauss_is_square(0)


@given(nonzero)
def test_square_of_anything_is_square(c):
    w = gauss_is_square(c * c)
    assert w is not None
    assert w == c or w == -c


@given(nonzero)
def test_witness_squares_back(c):
    w = gauss_is_square(c)
    if w is not None:
        assert w * w == c


@given(nonzero, nonzero)
def test_squares_multiply(c, d):
    if gauss_is_square(c) is not None and gauss_is_square(d) is not None:
        assert gauss_is_square(c * d) is not None


@given(nonzero, nonzero)
def test_square_class_rep_is_class_invariant(c, d):
    assert square_class_rep(c * d * d) == square_class_rep(c)
    assert same_square_class(c, c * d * d)
    assert gauss_is_square(square_class_rep(c) / c) is not None


def test_square_class_reps():
    assert square_class_rep(-1) == 1
    assert square_class_rep(I) == 2
    assert square_class_rep(2 * I) == 1
    assert square_class_rep(GaussRat(9, 12)) == 3
    assert square_class_rep(Fraction(5, 4)) == 5


def test_reduced_constant_keeps_sign():
    assert reduced_constant(-2) == -2
    assert reduced_constant(144) == 1
    assert reduced_constant(Fraction(-8, 9)) == -2
