from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybforge.constructions import (
    NormalSequenceData,
    build_cba,
    c35_word,
    car_iyb,
    class2_decomposition,
    comp_semidirect,
    cyclic_perm_cocycle,
    direct_product_cocycle,
    hall_restriction,
    inversion_action,
    normal_sequence_violation,
    power_cocycle,
    semidirect_ah,
    semidirect_from_action,
    sylow_order,
    sylow_sym,
    trivial_cocycle,
    wreath,
)
from ybforge.errors import VerificationError
from ybforge.groups import (
    GroupError,
    abelian,
    cyclic,
    dihedral,
    heisenberg,
    isomorphic,
    quaternion,
    subgroup,
    symmetric,
)
from ybforge.iybgroup import cocycle_to_morphism, cocycle_violation, full_morphism, star_product


def assert_cocycle(c):
    assert cocycle_violation(c.group, c.target, c.action.per_element, c.pi) is None
    assert c.target.is_abelian()
    cocycle_to_morphism(c)


# Hall restriction

def test_hall_on_cyclic():
    c = trivial_cocycle(cyclic(6))
    assert hall_restriction(c, [2]).group.order == 2
    assert hall_restriction(c, [2, 3]).group.order == 6


def test_hall_on_q8c3(q8c3):
    _, c = star_product(full_morphism(q8c3.morphism))
    h3 = hall_restriction(c, [3])
    assert h3.group.order == 3
    assert_cocycle(h3)
    h2 = hall_restriction(c, [2])
    assert h2.group.order == 8
    assert_cocycle(h2)


# direct products

def test_direct_product_of_trivial_cocycles():
    c = direct_product_cocycle(trivial_cocycle(cyclic(2)), trivial_cocycle(cyclic(3)))
    assert c.group.order == 6 and isomorphic(c.group, cyclic(6))
    assert_cocycle(c)


def test_direct_product_with_q8c3(q8c3):
    _, c = star_product(full_morphism(q8c3.morphism))
    p = direct_product_cocycle(c, trivial_cocycle(cyclic(2)))
    assert p.group.order == 48
    assert_cocycle(p)
    one = direct_product_cocycle(c, trivial_cocycle(cyclic(1)))
    assert np.array_equal(one.pi, c.pi)
    assert power_cocycle(trivial_cocycle(cyclic(2)), 3).group.order == 8


# semidirect_ah

def _transposition_subgroup(g):
    t = next(x for x in range(1, g.order) if g.element_order(x) == 2)
    return [0, t]


def test_semidirect_ah_sym3():
    g = symmetric(3)
    a = g.derived_subgroup()
    h = _transposition_subgroup(g)
    hsub, _ = subgroup(g, h)
    c = semidirect_ah(g, a, h, trivial_cocycle(hsub))
    assert c.target.order == 6
    assert_cocycle(c)


def test_semidirect_ah_d8():
    g = dihedral(8)
    a = next(g.subgroup_generated([x]) for x in range(g.order) if g.element_order(x) == 4)
    h = next([0, x] for x in range(g.order) if g.element_order(x) == 2 and x not in a)
    hsub, _ = subgroup(g, h)
    c = semidirect_ah(g, a, h, trivial_cocycle(hsub))
    assert c.group.order == 8
    assert_cocycle(c)


def test_semidirect_ah_trivial_a(q8c3):
    _, c = star_product(full_morphism(q8c3.morphism))
    g = c.group
    out = semidirect_ah(g, [0], list(range(g.order)), c)
    assert out.target.order == c.target.order
    assert isomorphic(out.target, c.target)
    assert_cocycle(out)


def test_semidirect_ah_rejects_bad_hypotheses():
    g = symmetric(3)
    h = _transposition_subgroup(g)
    hsub, _ = subgroup(g, h)
    with pytest.raises(GroupError):
        semidirect_ah(g, h, g.derived_subgroup(), trivial_cocycle(subgroup(g, g.derived_subgroup())[0]))
    with pytest.raises(GroupError):
        semidirect_ah(g, [0], h, trivial_cocycle(hsub))  # G != A H


@pytest.mark.parametrize("a", [cyclic(3), cyclic(4), abelian(2, 2), cyclic(5)])
def test_every_a_semidirect_h_is_covered(a):
    h = cyclic(2)
    g, c = semidirect_from_action(a, trivial_cocycle(h), inversion_action(h, a))
    assert g.order == 2 * a.order
    assert_cocycle(c)


# comp_semidirect

def test_comp_semidirect_gives_sym3():
    n = cyclic(3)
    inv = [n.inverse(x) for x in range(3)]
    gamma = [list(range(3)), inv]
    c = comp_semidirect(trivial_cocycle(n), trivial_cocycle(cyclic(2)), gamma, gamma)
    assert isomorphic(c.group, symmetric(3))
    assert_cocycle(c)


def test_comp_semidirect_trivial_h():
    cn = trivial_cocycle(cyclic(4))
    c = comp_semidirect(cn, trivial_cocycle(cyclic(1)), [list(range(4))], [list(range(4))])
    assert c.group.order == 4 and np.array_equal(c.pi, cn.pi)


def test_comp_semidirect_rejects_incompatible_delta():
    n = cyclic(3)
    inv = [n.inverse(x) for x in range(3)]
    with pytest.raises(VerificationError):
        comp_semidirect(trivial_cocycle(n), trivial_cocycle(cyclic(2)),
                        [list(range(3)), inv], [list(range(3)), list(range(3))])


# wreath and Sylow

def test_wreath_c2_c2_is_d8():
    cp, rows = cyclic_perm_cocycle(2)
    c = wreath(trivial_cocycle(cyclic(2)), cp, rows)
    assert c.group.order == 8 and isomorphic(c.group, dihedral(8))
    assert_cocycle(c)


def test_wreath_c3_c3():
    cp, rows = cyclic_perm_cocycle(3)
    c = wreath(trivial_cocycle(cyclic(3)), cp, rows)
    assert c.group.order == 81
    assert_cocycle(c)


def test_wreath_trivial_base():
    cp, rows = cyclic_perm_cocycle(3)
    c = wreath(trivial_cocycle(cyclic(1)), cp, rows)
    assert c.group.order == 3 and isomorphic(c.group, cyclic(3))


def test_wreath_cap():
    cp, rows = cyclic_perm_cocycle(3)
    with pytest.raises(GroupError):
        wreath(trivial_cocycle(cyclic(3)), cp, rows, cap=80)


@pytest.mark.parametrize("p, n, order", [(2, 2, 2), (2, 4, 8), (2, 8, 128), (3, 3, 3), (3, 6, 9),
                                         (2, 6, 16), (5, 5, 5), (3, 9, 81)])
def test_sylow_orders(p, n, order):
    c = sylow_sym(p, n)
    assert c.group.order == order == sylow_order(p, n)
    assert_cocycle(c)
    if (p, n) == (2, 4):
        assert isomorphic(c.group, dihedral(8))


def test_sylow_rejects():
    with pytest.raises(ValueError):
        sylow_sym(4, 4)
    with pytest.raises(GroupError):
        sylow_sym(2, 8, cap=100)


@settings(max_examples=15)
@given(st.sampled_from([2, 3]), st.integers(1, 7))
def test_sylow_order_formula(p, n):
    c = sylow_sym(p, n)
    expected = p ** sum(n // p ** k for k in range(1, 8))
    assert c.group.order == expected


# normal sequences and class 2

def test_class2_parts():
    q = class2_decomposition(quaternion())
    assert [len(a) for a in q.abelian_parts] == [4, 4]
    h = class2_decomposition(heisenberg(3))
    assert [len(a) for a in h.abelian_parts] == [9, 9]
    ab = class2_decomposition(abelian(2, 3))
    assert ab.abelian_parts == [list(range(6))]
    with pytest.raises(GroupError):
        class2_decomposition(symmetric(3))


def test_car_iyb_on_abelian_is_trivial():
    g = abelian(2, 2)
    _, m = car_iyb(class2_decomposition(g))
    assert m.kernel() == list(range(4))


@pytest.mark.parametrize("g", [quaternion(), dihedral(8), heisenberg(3)])
def test_car_iyb_verifies(g):
    data = class2_decomposition(g)
    assert normal_sequence_violation(data) is None
    gm, m = car_iyb(data)
    _, c = star_product(m)
    assert cocycle_to_morphism(c) == m


def test_normal_sequence_conditions_are_named():
    g = symmetric(3)
    t = _transposition_subgroup(g)
    v = normal_sequence_violation(NormalSequenceData(g, [t, g.derived_subgroup()]))
    assert v is not None and "condition (i" in v.kind
    with pytest.raises(VerificationError):
        car_iyb(NormalSequenceData(g, [t, g.derived_subgroup()]))


# the explicit examples

def test_q8c3_generator_values(q8c3):
    mu = q8c3.morphism.mu
    n = q8c3.named
    assert q8c3.group.order == 24
    assert mu[n["a"]].tolist() == [2, 3, 4, 5, 0, 1, 6]
    assert mu[n["x"]].tolist() == [1, 0, 3, 2, 4, 5, 6]
    assert mu[n["y"]].tolist() == [0, 1, 3, 2, 5, 4, 6]
    assert mu[n["xy"]].tolist() == [1, 0, 2, 3, 5, 4, 6]
    assert mu[n["x^-1"]].tolist() == mu[n["x"]].tolist()


def test_q8c3_iybs_on_x_and_a(q8c3):
    g, gm = q8c3.group, q8c3.morphism
    zs = list(gm.gen_set)
    u, v = q8c3.named["x"], q8c3.named["a"]

    def act_inv(w, z):  # mu(w)^-1 (z) on Z
        return zs[int(np.argsort(gm.mu[w])[zs.index(z)])]

    assert g.mul(u, act_inv(u, v)) == g.mul(v, act_inv(v, u))


def test_cba_degenerate_and_42(cba42):
    assert cba42.group.order == 42
    d = build_cba(1, 2, 3, 1, 1, 0, 0, 0, 0)
    assert d.group.order == 6
    assert (d.morphism.mu == np.arange(d.morphism.mu.shape[1])).all()
    with pytest.raises(ValueError, match="rr"):
        build_cba(7, 3, 2, 2, 6, 0, 0, 1, 2)


def test_c35_structure(c35):
    g = c35.group
    assert g.order == 243
    assert len(c35.extra["derived"]) == 27
    assert len(c35.morphism.gen_set) == 162
    assert len(c35.extra["H"]) == 81
    assert all(c35.extra["checks"].values())
    assert c35.extra["diej_mismatches"] == []
    # d e d = a c d^2 e
    n = c35.named
    assert g.prod(n["d"], n["e"], n["d"]) == c35_word(g, n, a=1, c=1, d=2, e=1)


def test_c35_de_commute(c35):
    d = np.asarray(c35.extra["D"])
    e = np.asarray(c35.extra["E"])
    assert np.array_equal(d[e], e[d])
    assert np.array_equal(d[d[d]], np.arange(162))
