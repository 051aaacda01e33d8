from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybforge.perm import Permutation, all_permutations, compose, direct_sum


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


def test_composition_applies_right_factor_first():
    p = Permutation.from_cycles(3, (0, 1))
    q = Permutation.from_cycles(3, (1, 2))
    assert (p * q)(1) == p(q(1)) == 2
    assert (p * q)(0) == 1
    assert compose(p, q) == p * q


def test_cycles_and_order():
    p = Permutation.from_cycles(5, (0, 1, 2), (3, 4))
    assert p.order() == 6
    assert sorted(p.cycles()) == [(0, 1, 2), (3, 4)]
    assert (p ** 6).is_identity()
    assert p ** -1 == p.inverse()


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_all_permutations_lexicographic():
    ps = all_permutations(3)
    assert len(ps) == 6
    assert ps[0] == Permutation.identity(3)
    assert [tuple(p) for p in ps] == sorted(tuple(p) for p in ps)


def test_direct_sum_blocks():
    s = direct_sum((1, 0), (0, 2, 1))
    assert tuple(s) == (1, 0, 2, 4, 3)


def test_json_round_trip():
    p = Permutation((2, 0, 1))
    assert Permutation.from_json(p.to_json()) == p


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_group_axioms(triple):
    p, q, r = triple
    assert (p * q) * r == p * (q * r)
    assert (p * p.inverse()).is_identity()
    assert (p * q).inverse() == q.inverse() * p.inverse()


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(perms(n), perms(n))))
def test_conjugation_preserves_cycle_type(pair):
    p, pi = pair
    c = p.conjugate(pi)
    assert c == pi * p * pi.inverse()
    assert sorted(map(len, c.cycles())) == sorted(map(len, p.cycles()))
    assert c.order() == p.order()
