import pytest

from quartic_conics import monodromy as M
from quartic_conics.geometry import DELTA_NAME, HYPERPLANE_NAMES


def test_stored_table_spot_values():
    t2, t3 = M.stored_tables()
    assert str(t2[("q+C", 1)]) == "g3"
    assert str(t2[("p-2", 1)]) == "g1g4"
    assert str(t3[("p-2", 5)]) == "-g1g4"
    assert all(str(t3[(DELTA_NAME, i)]) == "-1" for i in range(1, 11))


def test_q1_column_is_sigma_q1():
    assert set(M.q1_column()) == set(M.SIGMA_Q1)


def test_entry_parse_roundtrip():
    for text in ("", "-1", "g2", "-g1g3g4"):
        assert str(M.Entry.parse(text)) == text


def test_structure_check_detects_corruption():
    t2, t3 = M.stored_tables()
    broken = dict(t3.entries)
    broken[("q+C", 1)] = M.Entry(0b0100, False)
    with pytest.raises(ValueError):
        M.check_table_structure(t2, M.MonodromyTable(t3.rows, t3.header, broken))


def test_derived_table_matches():
    assert M.compare_derived(M.derive_table()) == []


def test_opposite_transport_direction_disagrees():
    # phi(q1) = q_i read literally in phi^-1 gamma_phi(H) phi does not reproduce the table
    assert M.compare_derived(M.derive_table(convention="from_q1"))


def test_q2_example_entry():
    assert M.derive_table()[("q+E", 2)] == 0b1100


def test_group_orders():
    planes = M.plane_monodromy_group()
    conics = M.conic_monodromy_group()
    assert (planes.order, planes.degree) == (512, 160)
    assert (conics.order, conics.degree) == (1024, 320)
    assert planes.abelian and planes.exponent_two
    assert conics.abelian and conics.exponent_two


def test_forgetting_branches_has_kernel_of_order_two():
    assert M.conic_monodromy_group().order // M.plane_monodromy_group().order == 2


def test_loop_flips():
    assert M.loop_to_class_flips(DELTA_NAME) == tuple(range(1, 11))
    assert M.loop_to_class_flips("q+C") == (1, 4, 5)
    assert M.loop_to_class_flips("p+3") == (9,)
    with pytest.raises(ValueError):
        M.loop_to_class_flips("q+W")


def test_every_hyperplane_flips_something():
    assert all(M.loop_to_class_flips(h) for h in HYPERPLANE_NAMES)


def test_numeric_planes_match_exact(sample):
    import numpy as np

    from quartic_conics.conics import node_singular_points

    num = M.planes_numeric(np.array(sample, dtype=complex), 1)
    exact = [np.array([c.to_complex() for c in s]) for s in node_singular_points(sample, 1)]
    assert max(min(np.abs(e - n).max() for n in num) for e in exact) < 1e-9


@pytest.mark.parametrize("target", ["q-E", "p+1"])
def test_tracking_single_loops(sample, target):
    r = M.numeric_track_planes(sample, target)
    assert r.entry == str(M.stored_tables()[0][(target, 1)])


def test_loops_keep_clear_of_other_components(sample):
    for target in M.LOOP_ROWS:
        assert M.loop_clearance(M.make_loop(sample, target)) > 0


def test_delta_loop_with_vanishing_b_prime():
    p = (1, 5, -1, -1, -1)  # 16A^3 - 4A(C^2+D^2+E^2) + 4CDE = 0
    loop = M.make_loop(p, DELTA_NAME)
    assert loop.detour is not None
    r = M.numeric_track_conics(p, DELTA_NAME)
    assert (r.mask, r.swap) == (0, True)


def test_unknown_loop_target(sample):
    with pytest.raises(ValueError):
        M.make_loop(sample, "q+W")
