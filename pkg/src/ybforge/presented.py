"""A small collector for polycyclic presentations.

Only the fixed families needed by the builders are supported: a sequence of
generators ``g_0, ..., g_{k-1}`` with relative orders ``r_i``, power relations
``g_i^{r_i} = w_i`` and conjugate relations ``g_i^-1 g_j g_i = c_ij`` (``i < j``),
where ``w_i`` and ``c_ij`` only involve generators after ``g_i``.  Elements are
exponent vectors of the normal form ``g_0^{e_0} ... g_{k-1}^{e_{k-1}}``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd, prod

import numpy as np

from .groups import FiniteGroup, GroupError


class PcPresentation:
    def __init__(self, names, rel_orders, powers=None, conjugates=None):
        self.names = list(names)
        self.rel_orders = [int(r) for r in rel_orders]
        self.k = k = len(self.names)
        zero = (0,) * k
        self.powers = [zero] * k
        for i, w in (powers or {}).items():
            self.powers[i] = self._vec(w, after=i)
        self.conjugates = {}
        for i in range(k):
            for j in range(i + 1, k):
                unit = tuple(1 if t == j else 0 for t in range(k))
                self.conjugates[i, j] = unit
        for (i, j), w in (conjugates or {}).items():
            if not i < j:
                raise ValueError("conjugate relations need i < j")
            self.conjugates[i, j] = self._vec(w, after=i)
        self._mul_gen = lru_cache(maxsize=None)(self._mul_gen_impl)

    def _vec(self, w, after):
        """Normalise a dict ``{generator: exponent}`` into an exponent vector."""
        v = [0] * self.k
        for g, e in dict(w).items():
            i = self.names.index(g) if isinstance(g, str) else int(g)
            if i <= after:
                raise ValueError(f"relation word for generator {after} uses generator {i}")
            v[i] = int(e) % self.rel_orders[i] if e >= 0 else int(e)
        if any(e < 0 for e in v):
            raise ValueError("relation words must be given in normal form")
        return tuple(v)

    def identity(self):
        return (0,) * self.k

    def generator(self, i: int):
        return tuple(1 if t == i else 0 for t in range(self.k))

    def _mul_gen_impl(self, v, i):
        """Normal form of ``v * g_i``."""
        k = self.k
        tail = (0,) * (i + 1) + v[i + 1:]
        # move g_i left past the tail: tail * g_i = g_i * (g_i^-1 tail g_i)
        moved = self.identity()
        for j in range(i + 1, k):
            for _ in range(tail[j]):
                moved = self.mul(moved, self.conjugates[i, j])
        e = v[i] + 1
        if e < self.rel_orders[i]:
            return v[:i] + (e,) + moved[i + 1:]
        rest = self.mul(self.powers[i], moved)
        return v[:i] + (0,) + rest[i + 1:]

    def mul(self, u, v):
        for j, e in enumerate(v):
            for _ in range(e):
                u = self._mul_gen(u, j)
        return u

    def word(self, *letters):
        """Evaluate a word of ``(generator, exponent)`` pairs, exponents >= 0."""
        v = self.identity()
        for g, e in letters:
            i = self.names.index(g) if isinstance(g, str) else int(g)
            for _ in range(int(e) % self.rel_orders[i]):
                v = self._mul_gen(v, i)
        return v

    def elements(self):
        """All normal forms, in lexicographic order of exponent vectors."""
        return list(itertools.product(*(range(r) for r in self.rel_orders)))

    def label(self, v) -> str:
        parts = []
        for name, e in zip(self.names, v):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "".join(parts) or "1"

    def to_group(self, check: bool = True) -> tuple[FiniteGroup, dict]:
        """Tabulate the group; returns it with the normal-form -> index map.

        With ``check`` the table is validated, including associativity, which
        fails exactly when the presentation is inconsistent.
        """
        elems = self.elements()
        index = {v: n for n, v in enumerate(elems)}
        m = len(elems)
        right = np.empty((self.k, m), dtype=np.int64)
        for n, v in enumerate(elems):
            for i in range(self.k):
                w = self._mul_gen(v, i)
                if w not in index:
                    raise GroupError(f"collection left the normal form: {w}")
                right[i, n] = index[w]
        # every element is its predecessor times its last non-trivial generator
        table = np.empty((m, m), dtype=np.int64)
        table[:, 0] = np.arange(m)
        for n in range(1, m):
            v = elems[n]
            last = max(i for i in range(self.k) if v[i])
            prev = v[:last] + (v[last] - 1,) + v[last + 1:]
            table[:, n] = right[last][table[:, index[prev]]]
        labels = [self.label(v) for v in elems]
        group = FiniteGroup(table, labels=labels, check=check)
        return group, index


def q8c3_presentation() -> PcPresentation:
    """``<x, y, a | x^4 = x^2 y^2 = a^3 = 1, y^-1 x y = x^-1, a x a^-1 = y, a y a^-1 = x y>``."""
    return PcPresentation(
        ["a", "y", "x"], [3, 2, 4],
        powers={1: {"x": 2}},
        conjugates={
            (0, 1): {"x": 1},  # a^-1 y a = x
            (0, 2): {"y": 1, "x": 3},  # a^-1 x a = y x^-1
            (1, 2): {"x": 3},  # y^-1 x y = x^-1
        },
    )


CBA_FIELDS = ("n", "q1", "q2", "r1", "r2", "s1", "s2", "t", "u")


def _mult_order(r: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, r % n
    while x != 1:
        x = x * r % n
        k += 1
    return k


def cba_violations(n, q1, q2, r1, r2, s1, s2, t, u) -> list[str]:
    """Every congruence the cyclic-by-abelian parameters fail, by name."""
    bad = []
    if n < 1 or q1 < 2 or q2 < 2:
        bad.append("need n >= 1, q1 >= 2, q2 >= 2")
        return bad
    for name, r in (("r1", r1), ("r2", r2)):
        if gcd(r, n) != 1:
            bad.append(f"{name} must be a unit mod n (gcd({r}, {n}) != 1)")
    if bad:
        return bad
    if q1 % _mult_order(r1, n):
        bad.append(f"order of r1 mod n ({_mult_order(r1, n)}) must divide q1")
    if q2 % _mult_order(r2, n):
        bad.append(f"order of r2 mod n ({_mult_order(r2, n)}) must divide q2")
    if s1 * (r1 - 1) % n:
        bad.append("s1 (r1 - 1) = 0 mod n fails")
    if s2 * (r2 - 1) % n:
        bad.append("s2 (r2 - 1) = 0 mod n fails")
    geo1 = sum(pow(r1, k, n) for k in range(q1))
    geo2 = sum(pow(r2, k, n) for k in range(q2))
    if (t * geo1 - s1 * (r2 - 1)) % n:
        bad.append("t (1 + r1 + ... + r1^(q1-1)) = s1 (r2 - 1) mod n fails")
    if (-t * geo2 - s2 * (r1 - 1)) % n:
        bad.append("-t (1 + r2 + ... + r2^(q2-1)) = s2 (r1 - 1) mod n fails")
    if (r1 - 1 - u * (r2 - 1)) % n:
        bad.append("(rr) r1 - 1 = u (r2 - 1) mod n fails")
    return bad


def cba_presentation(n, q1, q2, r1, r2, s1, s2, t, u) -> PcPresentation:
    """``<a, b, c | a^n, b a b^-1 = a^r1, c a c^-1 = a^r2, b^q1 = a^s1, c^q2 = a^s2, c b c^-1 = a^t b>``.

    Normal form ``c^k b^j a^i``.
    """
    bad = cba_violations(n, q1, q2, r1, r2, s1, s2, t, u)
    if bad:
        raise ValueError("; ".join(bad))
    v1 = pow(r1, -1, n) if n > 1 else 0
    v2 = pow(r2, -1, n) if n > 1 else 0
    return PcPresentation(
        ["c", "b", "a"], [q2, q1, n],
        powers={0: {"a": s2 % n}, 1: {"a": s1 % n}},
        conjugates={
            (0, 1): {"b": 1, "a": (-t * v1 * v2) % n},  # c^-1 b c = a^(-t v2) b
            (0, 2): {"a": v2 % n},
            (1, 2): {"a": v1 % n},
        },
    )


def c35_presentation() -> PcPresentation:
    """Order 243: ``a, b`` central, ``dc = acd``, ``ec = bce``, ``ed = cde``, all cubes trivial."""
    return PcPresentation(
        ["e", "d", "c", "b", "a"], [3] * 5,
        conjugates={
            (0, 1): {"d": 1, "c": 2, "b": 1, "a": 1},  # e^-1 d e = b c^2 d
            (0, 2): {"c": 1, "b": 2},  # e^-1 c e = b^-1 c
            (1, 2): {"c": 1, "a": 2},  # d^-1 c d = a^-1 c
        },
    )


def expected_order(p: PcPresentation) -> int:
    return prod(p.rel_orders)
