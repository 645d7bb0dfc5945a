"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from quartic_conics.tower import TowerDescriptor

TOWERS = (
    TowerDescriptor.from_classes([]),
    TowerDescriptor.from_classes([-1]),
    TowerDescriptor.from_classes([2, 3]),
    TowerDescriptor.from_classes([-1, 5, 7]),
    TowerDescriptor.from_classes([2, -3, 5, -7]),
)

small_fracs = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def tower_elements(draw, desc=None, nonzero=False):
    desc = desc if desc is not None else draw(st.sampled_from(TOWERS))
    coords = {m: draw(small_fracs) for m in range(desc.dim) if draw(st.booleans())}
    x = desc.from_coords(coords)
    if nonzero and not x:
        x = desc.one()
    return x


@st.composite
def element_pairs(draw, count=2):
    desc = draw(st.sampled_from(TOWERS))
    return tuple(draw(tower_elements(desc)) for _ in range(count))


@st.composite
def sign_vectors(draw, desc):
    return [draw(st.sampled_from((1, -1))) for _ in range(desc.n)]


@st.composite
def rational_points(draw, n=5, bound=40):
    pt = [Fraction(draw(st.integers(-bound, bound)), draw(st.integers(1, 5))) for _ in range(n)]
    if not any(pt):
        pt[0] = Fraction(1)
    return pt
