from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quartic_conics.arith import (
    GaussRat,
    class_in_span,
    factorize,
    is_rational_square,
    rational_sqrt,
    square_class_rank,
    squarefree_part,
)

nonzero = st.integers(-10**6, 10**6).filter(bool)
fracs = st.fractions(max_denominator=1000).filter(bool)


def test_factorize_small():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}


def test_factorize_large_semiprime():
    p, q = 1000003, 998244353
    assert factorize(p * q) == {p: 1, q: 1}


@given(st.integers(2, 10**12))
def test_factorize_reconstructs(n):
    out = 1
    for p, e in factorize(n).items():
        out *= p**e
    assert out == n


@given(fracs, fracs)
def test_squarefree_part_multiplicative(a, b):
    lhs = squarefree_part(a * b).value
    rhs = squarefree_part(squarefree_part(a).value * squarefree_part(b).value).value
    assert lhs == rhs


@given(fracs)
def test_square_times_square_class(r):
    assert squarefree_part(r * r).value == 1
    assert is_rational_square(r * r)
    assert rational_sqrt(r * r) == abs(r)


def test_squarefree_negative_and_fraction():
    assert squarefree_part(Fraction(-12, 5)).value == -15
    assert rational_sqrt(Fraction(-4)) is None


def test_rank_and_span():
    rank, basis = square_class_rank([2, 3, 6, -1, 5])
    assert rank == 4
    assert basis == [0, 1, 3, 4]
    assert sorted(class_in_span(Fraction(-30, 49), [2, 3, -1, 5])) == [0, 1, 2, 3]
    assert class_in_span(7, [2, 3, 5]) is None


@given(st.lists(nonzero, min_size=1, max_size=6))
def test_rank_bounded_by_length(values):
    rank, basis = square_class_rank(values)
    assert rank == len(basis) <= len(values)


def test_gauss_rationals():
    i = GaussRat(0, 1)
    assert i * i == GaussRat(-1)
    z = GaussRat(Fraction(3, 2), -2)
    assert z * z.conjugate() == GaussRat(z.norm())
    assert z / z == GaussRat(1)
    with pytest.raises(ZeroDivisionError):
        GaussRat(1) / GaussRat(0)
