from __future__ import annotations

import numpy as np
import pytest

from oracles import brute_liftings, brute_trivial_quotient_liftings
from ybforge.constructions import car_iyb, class2_decomposition, trivial_cocycle, trivial_morphism
from ybforge.errors import VerificationError
from ybforge.groups import (
    GroupError,
    abelian,
    cyclic,
    dihedral,
    generating_set,
    heisenberg,
    isomorphic,
    quaternion,
    quotient,
    small_faithful_action,
    symmetric,
)
from ybforge.iybgroup import (
    PreconditionError,
    check_action_forcing,
    check_cocycle,
    check_generator_morphism,
    check_iyb_morphism,
    cocycle_to_morphism,
    full_morphism,
    generator_morphism_to_full,
    iybs_violation,
    kernel_properties,
    lift_search,
    morphism_violation,
    quotient_morphism,
    star_product,
)
from ybforge.ybe import solution_from_map, solution_violations, t_conjugation_check


def test_trivial_morphism_of_abelian_group():
    g = abelian(2, 4)
    m = trivial_morphism(g)
    a, c = star_product(m)
    assert np.array_equal(a.table, g.table)
    assert cocycle_to_morphism(c) == m


def test_trivial_morphism_fails_on_nonabelian_group():
    g = symmetric(3)
    v = morphism_violation(g, np.tile(np.arange(6), (6, 1)))
    assert v is not None and v.kind == "IYBS identity"


def test_corrupted_morphism_reports_homomorphism_failure(q8c3):
    mu = full_morphism(q8c3.morphism).mu.copy()
    g = q8c3.group
    x = q8c3.named["x"]
    mu[x] = mu[x][mu[x]]  # replace mu(x) by mu(x)^2 only at x
    with pytest.raises(VerificationError) as exc:
        check_iyb_morphism(g, mu)
    assert exc.value.violation.kind in ("homomorphism", "IYBS identity")


def test_full_morphism_extends_generator_values(q8c3):
    gm = q8c3.morphism
    m = full_morphism(gm)
    zs = np.asarray(gm.gen_set)
    assert np.array_equal(m.mu[:, zs], zs[gm.mu])
    assert iybs_violation(m.group, m.mu) is None


def test_star_product_round_trip(q8c3, cba42):
    for gm in (q8c3.morphism, cba42.morphism):
        m = full_morphism(gm)
        a, c = star_product(m)
        assert a.is_abelian()
        assert cocycle_to_morphism(c) == m
        # the star product of an IYB morphism defines an abelian group of the same order
        assert a.order == m.group.order


def test_kernel_properties(q8c3):
    m = full_morphism(q8c3.morphism)
    rep = kernel_properties(m)
    assert rep.is_abelian
    assert rep.conjugation_identity_holds
    assert len(rep.kernel) == 2  # the centre {1, x^2}


def test_quotient_morphism(q8c3):
    m = full_morphism(q8c3.morphism)
    qm, proj = quotient_morphism(m, m.kernel())
    assert qm.group.order == 12
    with pytest.raises(GroupError):
        quotient_morphism(m, q8c3.group.derived_subgroup())


def test_action_forcing_and_preconditions(q8c3):
    _, c = star_product(full_morphism(q8c3.morphism))
    assert check_action_forcing(c.group, c.target, c.action.per_element, c.pi)
    bad_pi = np.roll(c.pi, 1)
    with pytest.raises(PreconditionError):
        check_action_forcing(c.group, c.target, c.action.per_element, bad_pi)


def test_cocycle_rejections():
    g = cyclic(4)
    a = cyclic(4)
    with pytest.raises(VerificationError) as exc:
        check_cocycle(g, a, np.tile(np.arange(4), (4, 1)), [0, 2, 1, 3])
    assert exc.value.violation.kind == "cocycle identity"
    with pytest.raises(VerificationError):
        check_cocycle(g, symmetric(3), np.tile(np.arange(6), (3, 1)), [0, 1, 2])


def test_generator_morphism_rejects_broken_iybs(q8c3):
    gm = q8c3.morphism
    mu = gm.mu.copy()
    a = q8c3.named["a"]
    mu[a] = np.arange(mu.shape[1])
    with pytest.raises(VerificationError):
        check_generator_morphism(gm.group, gm.gen_set, mu)


def test_map_on_z_union_y(q8c3):
    res = generator_morphism_to_full(q8c3.morphism, small_faithful_action(q8c3.group))
    assert res.iyb_map.size == 15
    assert res.closure.order == 24
    assert res.isomorphic is True
    s = solution_from_map(res.iyb_map)
    assert solution_violations(s) == []
    assert t_conjugation_check(s)[0]
    regular = generator_morphism_to_full(q8c3.morphism)
    assert regular.iyb_map.size == 31
    assert isomorphic(regular.closure, q8c3.group)


def _lift_case(g, normal, gens=None):
    q, proj = quotient(g, normal)
    mubar = trivial_morphism(q)
    gens = gens or generating_set(g)
    res = lift_search(g, normal, mubar, proj, gens)
    coset_of = np.asarray(proj.images)
    oracle = brute_liftings(g.table, g.inv, generating_set(g), normal, coset_of, mubar.mu)
    return res, oracle


@pytest.mark.parametrize("g, normal_fn", [
    (symmetric(3), lambda g: g.derived_subgroup()),
    (cyclic(4), lambda g: [0, 2]),
    (abelian(2, 2), lambda g: [0, 1]),
    (cyclic(6), lambda g: g.subgroup_generated([2])),
    (cyclic(5), lambda g: [0]),
])
def test_lift_search_matches_brute_force(g, normal_fn):
    normal = normal_fn(g)
    res, oracle = _lift_case(g, normal)
    assert res.exhaustive
    ours = sorted(m.mu.tobytes() for m in res.liftings)
    theirs = sorted(np.asarray(m, dtype=np.int64).tobytes() for m in oracle)
    assert ours == theirs


def test_lift_search_budget_flag(c35):
    g = c35.group
    n = g.derived_subgroup()
    q, proj = quotient(g, n)
    res = lift_search(g, n, trivial_morphism(q), proj, [c35.named["d"], c35.named["e"]], budget=5)
    assert not res.exhaustive
    assert res.nodes == 5


def test_lift_search_finds_known_lifting(c35):
    """Lifting the morphism's own quotient must recover it: the engine does not over-prune."""
    g = c35.group
    m = full_morphism(c35.morphism)
    n = g.derived_subgroup()
    mubar, proj = quotient_morphism(m, n)
    res = lift_search(g, n, mubar, proj, [c35.named["d"], c35.named["e"]])
    assert res.exhaustive
    assert any(np.array_equal(l.mu, m.mu) for l in res.liftings)
    assert res.space_size == 27 ** 3


def test_lift_search_input_checks():
    g = symmetric(3)
    q, proj = quotient(g, g.derived_subgroup())
    with pytest.raises(GroupError):
        lift_search(g, [0, 1], trivial_morphism(q), proj, generating_set(g))
    with pytest.raises(GroupError):
        lift_search(g, g.derived_subgroup(), trivial_morphism(q), proj, [1])


def test_car_iyb_morphisms_verify():
    for g in (quaternion(), dihedral(8)):
        gm, m = car_iyb(class2_decomposition(g))
        assert morphism_violation(g, m.mu) is None
        res = generator_morphism_to_full(gm, small_faithful_action(g))
        assert res.isomorphic is True


def test_trivial_cocycle_round_trip():
    c = trivial_cocycle(abelian(3, 3))
    m = cocycle_to_morphism(c)
    assert m.kernel() == list(range(9))


@pytest.mark.parametrize("g", [symmetric(3), quaternion(), dihedral(8), heisenberg(3), abelian(2, 2)])
def test_trivial_quotient_oracle_agrees(g):
    n = g.derived_subgroup()
    q, proj = quotient(g, n)
    gens = generating_set(g)
    res = lift_search(g, n, trivial_morphism(q), proj, gens)
    oracle, _, _ = brute_trivial_quotient_liftings(g.table, gens, n)
    assert res.exhaustive
    assert sorted(m.mu.tobytes() for m in res.liftings) == sorted(m.tobytes() for m in oracle)
