from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import TOWERS, element_pairs, sign_vectors, tower_elements

from quartic_conics.tower import (
    TowerDescriptor,
    apply_sign_automorphism,
    embed_rational_sqrt,
    invert,
    tower_sqrt,
)


def test_descriptor_rejects_dependent_generators():
    with pytest.raises(ValueError):
        TowerDescriptor((2, 3, 6))
    with pytest.raises(ValueError):
        TowerDescriptor((12,))


def test_roots_square_to_generators():
    desc = TowerDescriptor.from_classes([2, -3, 5])
    for j, d in enumerate(desc.generators):
        r = desc.root(j)
        assert r * r == desc.rational(d)


def test_sqrt_of_product_embeds():
    desc = TowerDescriptor.from_classes([2, -3, 5])
    r = embed_rational_sqrt(Fraction(-30 * 9, 4), desc)
    assert r is not None and r * r == desc.rational(Fraction(-270, 4))
    assert embed_rational_sqrt(7, desc) is None


def test_to_complex_matches_roots():
    desc = TowerDescriptor.from_classes([-1, 2])
    x = desc.root(0) * desc.root(1) + 3
    assert abs(x.to_complex() - (3 + 1j * 2**0.5)) < 1e-12


@given(element_pairs(3))
def test_ring_axioms(trip):
    a, b, c = trip
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == a.desc.zero()


@given(tower_elements(nonzero=True))
def test_inverse(x):
    assert x * invert(x) == x.desc.one()
    assert x / x == x.desc.one()


@given(tower_elements())
def test_sqrt_of_square(x):
    r = tower_sqrt(x * x)
    assert r is not None
    assert r == x or r == -x


@given(st.sampled_from(TOWERS).flatmap(lambda d: st.tuples(tower_elements(d), tower_elements(d), sign_vectors(d))))
def test_sign_automorphism_is_ring_map(args):
    a, b, signs = args
    f = lambda z: apply_sign_automorphism(z, signs)  # noqa: E731
    assert f(a * b) == f(a) * f(b)
    assert f(a + b) == f(a) + f(b)
    assert f(f(a)) == a


def test_non_square_has_no_root():
    desc = TowerDescriptor.from_classes([2])
    assert tower_sqrt(desc.rational(3)) is None
    assert tower_sqrt(desc.root(0)) is None
