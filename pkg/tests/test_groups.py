from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybforge.groups import (
    FiniteGroup,
    GroupAction,
    GroupError,
    abelian,
    closure,
    cyclic,
    dihedral,
    direct_product,
    find_isomorphism,
    fingerprint,
    generating_set,
    group_invariants,
    heisenberg,
    isomorphic,
    nilpotency_class,
    perm_hom_from_generators,
    quaternion,
    quotient,
    semidirect_product,
    small_faithful_action,
    subgroup,
    symmetric,
)
from ybforge.kernels import associativity_violation


@pytest.mark.parametrize("g, order, center, derived, abel", [
    (cyclic(6), 6, 6, 1, True),
    (symmetric(3), 6, 1, 3, False),
    (symmetric(4), 24, 1, 12, False),
    (dihedral(8), 8, 2, 2, False),
    (quaternion(), 8, 2, 2, False),
    (heisenberg(3), 27, 3, 3, False),
])
def test_basic_invariants(g, order, center, derived, abel):
    assert g.order == order
    assert len(g.center()) == center
    assert len(g.derived_subgroup()) == derived
    assert g.is_abelian() == abel


def test_identity_is_zero_and_inverses():
    g = symmetric(4)
    assert all(g.mul(0, x) == x == g.mul(x, 0) for x in range(g.order))
    assert all(g.mul(x, g.inverse(x)) == 0 for x in range(g.order))


def test_rejects_non_associative_table():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    assert associativity_violation(np.array(t)) is not None
    with pytest.raises(GroupError):
        FiniteGroup(t)


def test_rejects_non_latin_table():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])


def test_quotient_and_subgroup():
    s4 = symmetric(4)
    a4 = s4.derived_subgroup()
    q, proj = quotient(s4, a4)
    assert q.order == 2
    assert sorted(proj.kernel()) == sorted(a4)
    sub, elems = subgroup(s4, a4)
    assert sub.order == 12 and elems == sorted(a4)
    with pytest.raises(GroupError):
        quotient(s4, [0, 1])


def test_isomorphism_decisions():
    assert isomorphic(dihedral(8), quaternion()) is False
    assert isomorphic(symmetric(3), dihedral(6)) is True
    assert isomorphic(cyclic(4), abelian(2, 2)) is False
    assert isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6)) is True
    phi = find_isomorphism(symmetric(3), dihedral(6))
    g, h = symmetric(3), dihedral(6)
    assert all(phi[g.mul(a, b)] == h.mul(phi[a], phi[b]) for a in range(6) for b in range(6))


def test_nilpotency():
    assert nilpotency_class(heisenberg(3)) == 2
    assert nilpotency_class(cyclic(5)) == 1
    assert nilpotency_class(symmetric(3)) is None


def test_semidirect_gives_dihedral():
    c4 = cyclic(4)
    c2 = cyclic(2)
    act = GroupAction(c2, c4, [list(range(4)), [c4.inverse(x) for x in range(4)]])
    g = semidirect_product(c4, c2, act)
    assert isomorphic(g, dihedral(8))


def test_closure_of_generators():
    g = closure([[1, 2, 0, 3], [1, 0, 2, 3]], 4)
    assert g.order == 6
    assert g.perms.shape == (6, 4)


def test_small_faithful_action_is_faithful(q8c3):
    rows = small_faithful_action(q8c3.group)
    assert len({tuple(r) for r in rows.tolist()}) == q8c3.group.order
    assert rows.shape[1] == 8


def test_perm_hom_from_generators_checks_relations():
    c3 = cyclic(3)
    with pytest.raises(GroupError):
        perm_hom_from_generators(c3, [1], [[1, 0]], 2)  # an involution cannot be the image of an order-3 generator
    rows = perm_hom_from_generators(c3, [1], [[1, 2, 0]], 3)
    assert rows.shape == (3, 3)


def test_generating_set_generates():
    for g in (symmetric(4), heisenberg(3), quaternion()):
        assert len(g.subgroup_generated(generating_set(g))) == g.order


def test_fingerprint_matches_invariants():
    g = heisenberg(3)
    inv = group_invariants(g)
    assert fingerprint(g) == inv.fingerprint()
    assert fingerprint(g)[0] == 27


def test_json_round_trip():
    g = dihedral(10)
    assert FiniteGroup.from_json(g.to_json()) == g


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_abelian_groups_decided_by_structure(orders):
    g = abelian(*orders)
    assert g.is_abelian()
    assert g.order == int(np.prod(orders))
    assert isomorphic(g, abelian(*reversed(orders))) is True


@given(st.integers(2, 5), st.integers(0, 10_000))
def test_relabelled_group_is_isomorphic(n, seed):
    g = symmetric(3) if n == 3 else cyclic(n) if n != 4 else dihedral(8)
    rng = np.random.default_rng(seed)
    perm = np.concatenate([[0], 1 + rng.permutation(g.order - 1)])
    inv = np.argsort(perm)
    h = FiniteGroup(perm[g.table[np.ix_(inv, inv)]])
    assert isomorphic(g, h) is True
