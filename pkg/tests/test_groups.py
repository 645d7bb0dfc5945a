import pytest

from quartic_conics.groups import (
    GAMMA_AS_PHI_WORDS,
    IDENTITY,
    Perm,
    action_on_hyperplanes,
    action_on_nodes,
    conjugate_rule,
    gamma_element,
    gamma_group,
    gamma_mask,
    omega_group,
    omega_report,
    orbits,
    perm_closure,
    phi,
    word,
)
from quartic_conics.geometry import HYPERPLANE_NAMES

Q1_COLUMN = {"q+C": 0b0100, "q+D": 0b1000, "q-E": 0b1100, "p+0": 0b0011, "p-0": 0b1111,
             "p+1": 0b1110, "p-1": 0b0110, "p+2": 0b1101, "p-2": 0b1001}


def test_gamma_is_elementary_abelian():
    G = gamma_group()
    assert len(G) == 16
    assert all((g * g).is_identity() for g in G)
    assert all((a * b).key == (b * a).key for a in G for b in G)


def test_gamma_words_in_phi():
    for j, w in GAMMA_AS_PHI_WORDS.items():
        assert gamma_mask(word(*w)) == 1 << (j - 1)


def test_omega_report():
    rep = omega_report()
    assert (rep.order, rep.gamma_order, rep.quotient_order) == (11520, 16, 720)
    assert rep.gamma_normal and rep.trivial_centre and rep.p4_kernel_is_gamma


def test_identity_acts_trivially():
    assert action_on_nodes(IDENTITY).is_identity()
    assert action_on_hyperplanes(IDENTITY).is_identity()


@pytest.mark.parametrize("k, hyper, nodes", [
    (1, "(p+0,p-0)(p+1,p-1)(p+2,p-2)(p+3,p-3)", None),
    (2, None, "(q1,q2)(q7,q9)(q8,q10)"),
    (5, "(A,q+C)(q+D,p+0)(q-D,p-1)(q+E,p-0)(q-E,p+1)(p+2,p-3)", None),
])
def test_generator_actions(k, hyper, nodes):
    if hyper:
        assert action_on_hyperplanes(phi(k)) == Perm.from_cycles(HYPERPLANE_NAMES, hyper)
    if nodes:
        assert action_on_nodes(phi(k)) == Perm.from_cycles([f"q{i}" for i in range(1, 11)], nodes)


def test_actions_are_homomorphisms():
    a, b = phi(2), phi(5)
    assert action_on_nodes(a * b) == action_on_nodes(a) * action_on_nodes(b)
    assert action_on_hyperplanes(a * b) == action_on_hyperplanes(a) * action_on_hyperplanes(b)


def test_conjugate_rule_examples():
    assert conjugate_rule(phi(2), "A", Q1_COLUMN) == 0
    assert conjugate_rule(phi(2), "q+E", Q1_COLUMN) == 0b1100


def test_gamma_is_normal_under_generators():
    for k in range(1, 6):
        for m in range(16):
            assert gamma_mask(phi(k).inverse() * gamma_element(m) * phi(k)) is not None


def test_omega_transitive_on_nodes():
    perms = [action_on_nodes(phi(k)) for k in range(1, 6)]
    assert [len(o) for o in orbits(perms)] == [10]
    assert len(perm_closure(perms)) == len(omega_group()) // 16


def test_perm_basics():
    labels = ("a", "b", "c")
    p = Perm.from_cycles(labels, "(a,b,c)")
    assert p.order() == 3
    assert (p * p.inverse()).is_identity()
    assert p("a") == "b"
    with pytest.raises(ValueError):
        Perm(labels, (0, 0, 1))
