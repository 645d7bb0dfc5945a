from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from quartic_conics.poly import MultiPoly, act_linear, evaluate, exact_divide, restrict_to_plane

x, y, z, w = (MultiPoly.var(i, 4) for i in range(4))

coeffs = st.integers(-9, 9)


@st.composite
def linear_forms(draw):
    c = [draw(coeffs) for _ in range(4)]
    if not any(c):
        c[3] = 1
    return MultiPoly.linear(c)


@st.composite
def quadrics(draw):
    f = MultiPoly(4)
    for a in range(4):
        for b in range(a, 4):
            f = f + MultiPoly.var(a, 4) * MultiPoly.var(b, 4) * draw(coeffs)
    return f


def test_degree_and_homogeneity():
    f = x**4 + x * y * z * w - 2 * z**2 * w**2
    assert f.degree == 4
    assert f.is_homogeneous()
    assert not (f + x).is_homogeneous()


@given(quadrics(), linear_forms())
def test_exact_divide_recovers_factor(q, l):
    f = q * l
    assert exact_divide(f, l) == q


def test_exact_divide_reports_non_divisible():
    assert exact_divide(x**2 + y**2, x + y) is None


@given(quadrics(), st.lists(coeffs, min_size=4, max_size=4))
def test_evaluate_is_ring_map(q, pt):
    assert evaluate(q * q, pt) == evaluate(q, pt) ** 2


def test_restriction_to_plane_vanishes_on_multiples():
    plane = (1, 2, -1, 3)
    l = MultiPoly.linear(list(plane))
    assert not restrict_to_plane(l * (x + z), plane)


def test_linear_action_swaps_variables():
    M = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    f = x**3 * y + Fraction(1, 2) * z * w
    g = act_linear(f, M)
    assert g in (x * y**3 + Fraction(1, 2) * z * w,)
