from __future__ import annotations

import numpy as np
import pytest

from ybforge.amplify import iterate_lambda2, lambda2, psi, psi_violation, require_within_cap
from ybforge.errors import BudgetExceeded
from ybforge.groups import closure, small_faithful_action
from ybforge.iybgroup import generator_morphism_to_full
from ybforge.ybe import check_iyb_map, solution_from_map, solution_violations, t_conjugation_check


def test_psi_formula():
    m = check_iyb_map([[1, 2, 0]] * 3)
    tau = [2, 0, 1]
    p = psi(m, tau)
    n = 3
    lam = m.array()
    for x in range(n):
        for y in range(n):
            tx = tau[x]
            expect = tx * n + int(np.argsort(lam[tx])[tau[lam[x][y]]])
            assert p[x * n + y] == expect


def test_psi_is_an_injective_homomorphism(enumerated):
    for m in enumerated[3].maps:
        g = closure([list(m.lam[x]) for x in range(3)] + [[0, 1, 2]], 3)
        assert psi_violation(m, g) is None


def test_identity_map_iterates():
    m = check_iyb_map([[0, 1, 2]] * 3)
    res = iterate_lambda2(m, 3)
    assert [x.size for x in res.maps] == [3, 9, 81]
    assert not res.complete  # 81^2 points exceeds the default cap
    assert all(all(p.is_identity() for p in x.lam) for x in res.maps)


def test_transposition_map_two_stages():
    m = check_iyb_map([[1, 0], [1, 0]])
    res = iterate_lambda2(m, 2)
    assert [x.size for x in res.maps] == [2, 4, 16]
    assert res.complete
    assert res.stages[0].isomorphic is None  # identity not in lam(X)


def test_lambda2_of_enumerated_maps(enumerated):
    for n in (1, 2, 3):
        for m in enumerated[n].maps:
            amp = lambda2(m)
            assert amp.result.size == n * n
            s = solution_from_map(amp.result)
            assert solution_violations(s) == []
            assert t_conjugation_check(s)[0]
            if m.image_contains_identity():
                assert amp.isomorphic is True
            else:
                assert amp.isomorphic is None and amp.notes


def test_q8c3_amplification_within_cap(q8c3):
    base = generator_morphism_to_full(q8c3.morphism, small_faithful_action(q8c3.group)).iyb_map
    amp = lambda2(base)
    assert amp.result.size == 225
    assert amp.isomorphic is True
    assert amp.result_closure.order == 24


def test_cap_enforcement():
    m = check_iyb_map([[0, 1, 2, 3]] * 4)
    with pytest.raises(BudgetExceeded):
        require_within_cap(m, 3, cap_points=4096)
    require_within_cap(m, 2, cap_points=4096)
