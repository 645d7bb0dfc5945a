import pytest

from quartic_conics.conics import (
    conic_key,
    conic_pair,
    conics_for_node,
    embed_node_planes,
    gamma_record,
    node1_plane_formulas,
    node_singular_points,
    normalize_vector,
    plane_key,
    qprime_and_mu,
    radical_tower,
    trope_from_singular_point,
    verify_conic,
)
from quartic_conics.geometry import DegenerateError, residual_coefficients


def test_sixteen_singular_points_per_node(sample):
    for i in (1, 5, 9):
        assert len(node_singular_points(sample, i)) == 16


def test_trope_meets_residual_in_double_conic(sample):
    s = node_singular_points(sample, 1)[0]
    Q, mu = qprime_and_mu(residual_coefficients(sample, 1), s)
    assert Q.degree == 2 and mu


def test_conic_pair_on_same_trope(sample):
    plus, minus = conic_pair(sample, 2)
    assert plane_key(plus) == plane_key(minus)
    assert conic_key(plus) != conic_key(minus)
    assert plus.branch == 1 and minus.branch == -1


def test_node_orbit_shape(sample):
    recs = conics_for_node(sample, 3)
    assert len(recs) == 32
    assert len({conic_key(r) for r in recs}) == 32
    assert len({plane_key(r) for r in recs}) == 16


@pytest.mark.parametrize("i", [1, 4, 7, 10])
def test_seed_conics_verify(sample, i):
    plus, minus = conic_pair(sample, i)
    assert verify_conic(sample, plus) and verify_conic(sample, minus)


def test_gamma_image_verifies(sample):
    plus, _ = conic_pair(sample, 6)
    assert verify_conic(sample, gamma_record(plus, 0b1011))


def test_trope_requires_affine_point():
    with pytest.raises(ValueError):
        trope_from_singular_point((1, 2, 3, 0))


def test_normalize_vector():
    assert normalize_vector((0, 2, 4)) == (0, 1, 2)


def test_closed_form_planes_equal_pipeline_planes(sample):
    tower = radical_tower(sample)
    closed = {tuple(normalize_vector(pl)) for pl in node1_plane_formulas(sample, tower)}
    assert len(closed) == 16
    assert closed == embed_node_planes(sample, 1, tower)


def test_singular_point_is_degenerate():
    with pytest.raises(DegenerateError):
        conics_for_node((1, 0, -2, -2, 2), 1)
