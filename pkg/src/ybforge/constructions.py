"""Builders producing verified cocycles and morphisms.

Every builder re-verifies its output with the checks in :mod:`ybforge.iybgroup`;
nothing is trusted because a proof says it should hold.
"""
from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import VerificationError, Violation
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupAction,
    GroupError,
    cyclic,
    direct_product,
    non_automorphism,
    perm_hom_from_generators,
    quotient,
    semidirect_product,
    subgroup,
)
from .iybgroup import (
    BijectiveCocycle,
    GeneratorMorphism,
    IYBMorphism,
    check_cocycle,
    check_generator_morphism,
    check_iyb_morphism,
    full_morphism,
)
from .presented import c35_presentation, cba_presentation, cba_violations, q8c3_presentation


def trivial_cocycle(a: FiniteGroup) -> BijectiveCocycle:
    """``pi = id`` on an abelian group acting trivially on itself."""
    alpha = np.tile(np.arange(a.order), (a.order, 1))
    return check_cocycle(a, a, alpha, np.arange(a.order))


def trivial_morphism(g: FiniteGroup) -> IYBMorphism:
    return check_iyb_morphism(g, np.tile(np.arange(g.order), (g.order, 1)))


def _prime_factors(k: int) -> set[int]:
    out = set()
    p = 2
    while p * p <= k:
        while k % p == 0:
            out.add(p)
            k //= p
        p += 1
    if k > 1:
        out.add(k)
    return out


def hall_restriction(c: BijectiveCocycle, primes: Sequence[int]) -> BijectiveCocycle:
    """Restrict to ``H = pi^-1(B)`` for ``B`` the Hall subgroup of ``A`` for ``primes``."""
    primes = set(int(p) for p in primes)
    a = c.target
    orders = a.element_orders()
    b = [x for x in range(a.order) if _prime_factors(int(orders[x])) <= primes]
    pinv = np.argsort(c.pi)
    h = sorted(int(pinv[x]) for x in b)
    if not c.group.is_subgroup(h):
        raise VerificationError(Violation("Hall preimage", (), detail="pi^-1(B) is not a subgroup"))
    hgrp, helems = subgroup(c.group, h)
    bgrp, belems = subgroup(a, b)
    bpos = np.full(a.order, -1, dtype=np.int64)
    bpos[belems] = np.arange(len(belems))
    alpha = c.action.per_element[np.ix_(helems, belems)]
    if (bpos[alpha] < 0).any():
        raise VerificationError(Violation("Hall invariance", (), detail="B is not invariant"))
    return check_cocycle(hgrp, bgrp, bpos[alpha], bpos[c.pi[helems]])


def direct_product_cocycle(c1: BijectiveCocycle, c2: BijectiveCocycle) -> BijectiveCocycle:
    """``pi1 x pi2`` on ``G1 x G2``; pairs ``(i, j)`` at index ``i * |2| + j``."""
    g = direct_product(c1.group, c2.group)
    a = direct_product(c1.target, c2.target)
    m2 = c2.target.order
    al1, al2 = c1.action.per_element, c2.action.per_element
    # alpha[(g1, g2)][(a1, a2)] = (alpha1[g1][a1], alpha2[g2][a2])
    alpha = (al1[:, None, :, None] * m2 + al2[None, :, None, :]).reshape(g.order, a.order)
    pi = (c1.pi[:, None] * m2 + c2.pi[None, :]).reshape(-1)
    return check_cocycle(g, a, alpha, pi)


def _factorizations(g: FiniteGroup, a_elems, h_elems) -> list[list[tuple[int, int]]]:
    """For each element, every way of writing it as ``a h``."""
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.order)]
    for a in a_elems:
        for h in h_elems:
            out[int(g.table[a, h])].append((a, h))
    return out


def semidirect_ah(g: FiniteGroup, a_elems: Sequence[int], h_elems: Sequence[int],
                  c_h: BijectiveCocycle) -> BijectiveCocycle:
    """A cocycle on ``G = A H`` from one on ``H`` (``A`` abelian normal).

    ``c_h`` is a cocycle on the subgroup ``H`` with elements indexed as in
    ``sorted(h_elems)``.  Builds ``C = (A x B)/N`` for
    ``N = {(h^-1, pi(h)) : h in H n A}``, the action
    ``g (a, b)N = (g a g^-1, h(b))N`` for ``g = a' h``, and
    ``pi(a h) = (a, pi(h))N``; every well-definedness claim is checked.
    """
    a_elems = sorted(set(int(x) for x in a_elems))
    h_elems = sorted(set(int(x) for x in h_elems))
    if not g.is_normal(a_elems):
        raise GroupError("A is not a normal subgroup")
    asub, _ = subgroup(g, a_elems)
    if not asub.is_abelian():
        raise GroupError("A is not abelian")
    hsub, _ = subgroup(g, h_elems)
    if c_h.group != hsub:
        raise GroupError("the cocycle is not on H (indexed by sorted elements)")
    facts = _factorizations(g, a_elems, h_elems)
    if any(not f for f in facts):
        raise GroupError("G != A H")
    hpos = {h: i for i, h in enumerate(h_elems)}
    apos = {x: i for i, x in enumerate(a_elems)}
    inter = sorted(set(a_elems) & set(h_elems))
    beta = c_h.action.per_element
    ident_b = np.arange(c_h.target.order)
    for x in inter:
        if not np.array_equal(beta[hpos[x]], ident_b):
            raise GroupError("H n A does not act trivially on B")
    b = c_h.target
    nb = b.order
    ab = direct_product(asub, b)  # (a, b) at apos[a] * nb + b
    nsub = sorted(apos[g.inverse(x)] * nb + int(c_h.pi[hpos[x]]) for x in inter)
    if not ab.is_subgroup(nsub):
        raise VerificationError(Violation("N subgroup", (), detail="N is not a subgroup of A x B"))
    cgrp, proj = quotient(ab, nsub)
    p = np.asarray(proj.images)
    if cgrp.order != g.order:
        raise VerificationError(Violation("order of C", (), cgrp.order, g.order))
    # action on C: evaluate on every representative and every factorization
    alpha = np.full((g.order, cgrp.order), -1, dtype=np.int64)
    for x in range(g.order):
        for (a1, h1) in facts[x]:
            bh = beta[hpos[h1]]
            for ai, av in enumerate(a_elems):
                conj = apos[g.conj(x, av)]
                for bi in range(nb):
                    src = p[ai * nb + bi]
                    val = p[conj * nb + bh[bi]]
                    if alpha[x, src] < 0:
                        alpha[x, src] = val
                    elif alpha[x, src] != val:
                        raise VerificationError(Violation("action on C well defined", (x, src),
                                                          int(alpha[x, src]), int(val)))
    pi = np.full(g.order, -1, dtype=np.int64)
    for x in range(g.order):
        for (a1, h1) in facts[x]:
            val = p[apos[a1] * nb + int(c_h.pi[hpos[h1]])]
            if pi[x] < 0:
                pi[x] = val
            elif pi[x] != val:
                raise VerificationError(Violation("pi well defined", (x,), int(pi[x]), int(val)))
    return check_cocycle(g, cgrp, alpha, pi)


def comp_semidirect(c_n: BijectiveCocycle, c_h: BijectiveCocycle, gamma, delta) -> BijectiveCocycle:
    """A cocycle on ``N x| H`` from cocycles on ``N`` and ``H``.

    ``gamma`` (``|H| x |N|``) and ``delta`` (``|H| x |A|``) are actions by
    automorphisms with ``delta_h pi_N = pi_N gamma_h``.  The action on
    ``A x B`` is ``sigma_{nh}(a, b) = (alpha_n delta_h (a), beta_h(b))`` and
    ``pi(n h) = (pi_N(n), pi_H(h))``.  ``(n, h)`` is stored at ``n * |H| + h``.
    """
    n, h = c_n.group, c_h.group
    a, b = c_n.target, c_h.target
    gamma = np.asarray(gamma, dtype=np.int64)
    delta = np.asarray(delta, dtype=np.int64)
    gact = GroupAction(h, n, gamma)
    GroupAction(h, a, delta)
    # delta_h pi_N == pi_N gamma_h
    lhs = delta[:, c_n.pi]
    rhs = c_n.pi[gamma]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y = map(int, bad[0])
        raise VerificationError(Violation("compatibility delta_h pi_N = pi_N gamma_h", (x, y),
                                          int(lhs[x, y]), int(rhs[x, y])))
    alpha_n = c_n.action.per_element
    # delta_h alpha_n == alpha_{gamma_h(n)} delta_h
    for hh in range(h.order):
        left = delta[hh][alpha_n]
        right = alpha_n[gamma[hh]][:, delta[hh]]
        if not np.array_equal(left, right):
            nn = int(np.nonzero((left != right).any(axis=1))[0][0])
            raise VerificationError(Violation("delta_h alpha_n = alpha_gamma_h(n) delta_h", (hh, nn)))
    g = semidirect_product(n, h, gact)
    ab = direct_product(a, b)
    nb = b.order
    beta = c_h.action.per_element
    # sigma[(n, h)][(x, y)] = (alpha_n(delta_h(x)), beta_h(y))
    sig = np.empty((n.order, h.order, a.order, nb), dtype=np.int64)
    for nn in range(n.order):
        for hh in range(h.order):
            ax = alpha_n[nn][delta[hh]]
            sig[nn, hh] = ax[:, None] * nb + beta[hh][None, :]
    sigma = sig.reshape(g.order, ab.order)
    pi = (c_n.pi[:, None] * nb + c_h.pi[None, :]).reshape(-1)
    return check_cocycle(g, ab, sigma, pi)


def power_cocycle(c: BijectiveCocycle, k: int) -> BijectiveCocycle:
    """``c x ... x c`` (``k`` factors); ``k = 0`` gives the trivial group."""
    out = trivial_cocycle(cyclic(1))
    for _ in range(k):
        out = direct_product_cocycle(out, c)
    return out


def _coordinate_shift(m: int, n: int, h_perm: Sequence[int]) -> np.ndarray:
    """Index map of ``(x_0..x_{n-1}) -> (x_{h^-1(0)}, ..., x_{h^-1(n-1)})`` on ``m^n`` tuples."""
    hinv = np.argsort(np.asarray(h_perm))
    tuples = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64).reshape(-1, n)
    moved = tuples[:, hinv]
    weights = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return moved @ weights


def wreath(c_g: BijectiveCocycle, c_h: BijectiveCocycle, h_perms,
           cap: int = DEFAULT_ORDER_CAP) -> BijectiveCocycle:
    """A cocycle on ``G wr H = G^n x| H`` for ``H`` acting on ``n`` points.

    ``h_perms[h]`` is the permutation of ``{0..n-1}`` given by ``h``; ``H``
    moves coordinates, ``(h g)_i = g_{h^-1(i)}``, on both ``G^n`` and ``A^n``.
    """
    h_perms = np.asarray(h_perms, dtype=np.int64)
    n = h_perms.shape[1]
    if h_perms.shape[0] != c_h.group.order:
        raise GroupError("one permutation per element of H required")
    order = c_g.group.order ** n * c_h.group.order
    if order > cap:
        raise GroupError(f"wreath product of order {order} exceeds the cap {cap}")
    c_n = power_cocycle(c_g, n)
    gamma = np.array([_coordinate_shift(c_g.group.order, n, p) for p in h_perms]).reshape(
        c_h.group.order, c_n.group.order)
    delta = np.array([_coordinate_shift(c_g.target.order, n, p) for p in h_perms]).reshape(
        c_h.group.order, c_n.target.order)
    return comp_semidirect(c_n, c_h, gamma, delta)


def cyclic_perm_cocycle(p: int) -> tuple[BijectiveCocycle, np.ndarray]:
    """``C_p`` generated by the ``p``-cycle on ``p`` points, with its trivial cocycle."""
    rows = np.array([[(i + k) % p for i in range(p)] for k in range(p)], dtype=np.int64)
    return trivial_cocycle(cyclic(p)), rows


def sylow_order(p: int, n: int) -> int:
    e, q = 0, p
    while q <= n:
        e += n // q
        q *= p
    return p ** e


def sylow_sym(p: int, n: int, cap: int = DEFAULT_ORDER_CAP) -> BijectiveCocycle:
    """A cocycle on a Sylow ``p``-subgroup of ``Sym_n``.

    Built from ``P(p^k) = P(p^(k-1)) wr C_p`` and direct products over the
    base-``p`` digits of ``n``.
    """
    if _prime_factors(p) != {p}:
        raise ValueError(f"{p} is not prime")
    order = sylow_order(p, n)
    if order > cap:
        raise GroupError(f"Sylow subgroup of order {order} exceeds the cap {cap}")
    cp, rows = cyclic_perm_cocycle(p)
    levels = [trivial_cocycle(cyclic(1))]
    digits = []
    m = n
    while m:
        digits.append(m % p)
        m //= p
    for _ in range(1, len(digits)):
        levels.append(wreath(levels[-1], cp, rows, cap))
    out = trivial_cocycle(cyclic(1))
    for k, d in enumerate(digits):
        for _ in range(d):
            out = direct_product_cocycle(out, levels[k])
    if out.group.order != order:
        raise VerificationError(Violation("Sylow order", (p, n), out.group.order, order))
    return out


# normal sequences

@dataclass
class NormalSequenceData:
    group: FiniteGroup
    abelian_parts: list[list[int]]


def _set_product(g: FiniteGroup, xs, ys) -> list[int]:
    return sorted(set(g.table[np.ix_(list(xs), list(ys))].reshape(-1).tolist()))


def normal_sequence_violation(data: NormalSequenceData) -> Violation | None:
    g = data.group
    parts = [sorted(set(int(x) for x in a)) for a in data.abelian_parts]
    for i, a in enumerate(parts):
        if not g.is_subgroup(a):
            return Violation("abelian part", (i,), detail=f"A_{i + 1} is not a subgroup")
        sub, _ = subgroup(g, a)
        if not sub.is_abelian():
            return Violation("abelian part", (i,), detail=f"A_{i + 1} is not abelian")
    prev = [0]
    for i, a in enumerate(parts):
        cur = _set_product(g, prev, a)
        if not g.is_subgroup(cur) or not subgroup(g, cur)[0].is_normal(
                [subgroup(g, cur)[1].index(x) for x in prev]):
            return Violation("condition (i)", (i,), detail=f"G_{i} is not normal in G_{i + 1} = G_{i} A_{i + 1}")
        prev = cur
    if len(prev) != g.order:
        return Violation("condition (i)", (), detail="G_n != G")
    prev = [0]
    for i, a in enumerate(parts):
        tail = [0]
        for b in parts[i:]:
            tail = _set_product(g, tail, b)
        meet = sorted(set(prev) & set(tail))
        t = g.table
        block = np.ix_(meet, prev)
        if not np.array_equal(t[block], t.T[block]):
            return Violation("condition (ii)", (i,),
                             detail=f"G_{i} n (A_{i + 1}...A_n) does not centralize G_{i}")
        prev = _set_product(g, prev, a)
    for i, a in enumerate(parts):
        aset = set(a)
        for j in range(i, len(parts)):
            for y in parts[j]:
                if {g.conj(y, x) for x in a} != aset:
                    return Violation("condition (iii)", (i, j),
                                     detail=f"A_{j + 1} does not normalize A_{i + 1}")
    return None


def _factor(g: FiniteGroup, x: int, gi: list[list[int]], parts: list[list[int]],
            last: bool = False) -> list[int] | None:
    """``x = a_1 ... a_n`` with ``a_i`` in ``A_i``, choosing ``a_n`` first."""
    out = []
    for i in range(len(parts) - 1, -1, -1):
        below = set(gi[i])  # G_{i} as the product of A_1..A_i (0-based: parts[:i])
        cands = parts[i][::-1] if last else parts[i]
        for a in cands:
            rest = int(g.table[x, g.inv[a]])
            if rest in below:
                out.append(a)
                x = rest
                break
        else:
            return None
    out.reverse()
    return out


def car_iyb(data: NormalSequenceData) -> tuple[GeneratorMorphism, IYBMorphism]:
    """``mu(g)(a) = t a t^-1`` for ``a`` in ``A_i`` and ``t = a_i ... a_n``, ``g = a_1 ... a_n``.

    Each value is recomputed from a second factorization (and from every
    ``A_i`` containing ``a``) and compared.
    """
    v = normal_sequence_violation(data)
    if v is not None:
        raise VerificationError(v)
    g = data.group
    parts = [sorted(set(int(x) for x in a)) for a in data.abelian_parts]
    gi = [[0]]
    for a in parts:
        gi.append(_set_product(g, gi[-1], a))
    zs = sorted(set().union(*parts))
    zpos = {z: k for k, z in enumerate(zs)}
    owners = {z: [i for i, a in enumerate(parts) if z in a] for z in zs}
    mu = np.empty((g.order, len(zs)), dtype=np.int64)
    for x in range(g.order):
        fs = [f for f in (_factor(g, x, gi, parts), _factor(g, x, gi, parts, last=True)) if f]
        if not fs:
            raise VerificationError(Violation("factorization", (x,), detail="no factorization found"))
        for z in zs:
            vals = set()
            for f in fs:
                for i in owners[z]:
                    t = 0
                    for a in f[i:]:
                        t = int(g.table[t, a])
                    vals.add(g.conj(t, z))
            if len(vals) != 1:
                raise VerificationError(Violation("mu well defined", (x, z), detail=str(sorted(vals))))
            val = vals.pop()
            if val not in zpos:
                raise VerificationError(Violation("mu maps Z to Z", (x, z), val))
            mu[x, zpos[z]] = zpos[val]
    gm = check_generator_morphism(g, zs, mu)
    return gm, full_morphism(gm)


def class2_decomposition(g: FiniteGroup) -> NormalSequenceData:
    """``A_i = <x_i, Z(G)>`` where the ``x_i Z(G)`` split ``G/Z(G)`` into cyclic factors.

    Repeatedly takes the element whose class has the largest order modulo the
    span so far, among those whose class meets the span trivially (ties go to
    the smallest index).
    """
    center = g.center()
    if g.is_abelian():
        return NormalSequenceData(g, [list(range(g.order))])
    if not set(g.derived_subgroup()) <= set(center):
        raise GroupError("G is not nilpotent of class <= 2")
    q, proj = quotient(g, center)
    p = np.asarray(proj.images)
    span = [0]
    xs: list[int] = []
    while len(span) < q.order:
        s, quo = quotient(q, span)
        ps = np.asarray(quo.images)
        best = None
        for x in range(g.order):
            cls = int(p[x])
            k = s.element_order(int(ps[cls]))
            if k > 1 and q.element_order(cls) == k and (best is None or k > best[0]):
                best = (k, x)
        if best is None:
            raise GroupError("no cyclic direct factor found")
        xs.append(best[1])
        span = q.subgroup_generated([int(p[x]) for x in xs])
    parts = [g.subgroup_generated([x] + center) for x in xs]
    return NormalSequenceData(g, parts)


# the explicit examples

@dataclass
class BuiltExample:
    group: FiniteGroup
    morphism: GeneratorMorphism
    named: dict[str, int] = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def build_q8c3() -> BuiltExample:
    """``Q8 x| C3`` with ``Z = [x, x^-1, y, y^-1, xy, yx, a]``."""
    pres = q8c3_presentation()
    g, idx = pres.to_group()
    x = idx[pres.word(("x", 1))]
    y = idx[pres.word(("y", 1))]
    a = idx[pres.word(("a", 1))]
    if g.order != 24:
        raise VerificationError(Violation("order", (), g.order, 24))
    zs = [x, g.inverse(x), y, g.inverse(y), g.mul(x, y), g.mul(y, x), a]
    if len(set(zs)) != 7:
        raise VerificationError(Violation("Z", (), detail="elements of Z coincide"))
    images = {x: [1, 0, 3, 2, 4, 5, 6], y: [0, 1, 3, 2, 5, 4, 6], a: [2, 3, 4, 5, 0, 1, 6]}
    mu = perm_hom_from_generators(g, list(images), list(images.values()), 7)
    gm = check_generator_morphism(g, zs, mu)
    named = {"x": x, "y": y, "a": a, "x^-1": g.inverse(x), "y^-1": g.inverse(y),
             "xy": g.mul(x, y), "yx": g.mul(y, x)}
    return BuiltExample(g, gm, named)


def build_cba(n, q1, q2, r1, r2, s1, s2, t, u) -> BuiltExample:
    """The cyclic-by-abelian group with ``mu(a) = id``, ``mu(b) = f``, ``mu(c) = g``."""
    pres = cba_presentation(n, q1, q2, r1, r2, s1, s2, t, u)
    grp, idx = pres.to_group()
    if grp.order != n * q1 * q2:
        raise VerificationError(Violation("order", (), grp.order, n * q1 * q2))
    a = idx[pres.generator(2)] if n > 1 else 0
    b = idx[pres.generator(1)]
    c = idx[pres.generator(0)]
    apow = [grp.power(a, i) for i in range(n)]
    zs = apow[1:] + [grp.mul(apow[j], b) for j in range(n)] + [c]
    if len(set(zs)) != len(zs):
        raise VerificationError(Violation("Z", (), detail="elements of Z coincide"))
    zpos = {z: k for k, z in enumerate(zs)}
    f = [0] * len(zs)
    for i in range(1, n):
        f[zpos[apow[i]]] = zpos[apow[i * r1 % n]]
    for j in range(n):
        f[zpos[grp.mul(apow[j], b)]] = zpos[grp.mul(apow[(t * u + r1 * j) % n], b)]
    f[zpos[c]] = zpos[c]
    gperm = []
    for z in zs:
        w = grp.conj(c, z)
        if w not in zpos:
            raise VerificationError(Violation("conjugation by c preserves Z", (z,), w))
        gperm.append(zpos[w])
    gens = [b, c] + ([a] if n > 1 else [])
    imgs = [f, gperm] + ([list(range(len(zs)))] if n > 1 else [])
    mu = perm_hom_from_generators(grp, gens, imgs, len(zs))
    gm = check_generator_morphism(grp, zs, mu)
    return BuiltExample(grp, gm, {"a": a, "b": b, "c": c},
                        {"f": f, "g": gperm, "params": dict(n=n, q1=q1, q2=q2, r1=r1, r2=r2,
                                                             s1=s1, s2=s2, t=t, u=u)})


def c35_word(grp: FiniteGroup, gens: dict[str, int], **exps: int) -> int:
    """``a^.. b^.. c^.. d^.. e^..`` multiplied in that order."""
    out = 0
    for name in "abcde":
        out = grp.mul(out, grp.power(gens[name], exps.get(name, 0)))
    return out


def diej_mismatches(grp: FiniteGroup, gens: dict[str, int]) -> list[tuple[int, int, int, int]]:
    """Tuples where ``d^i1 e^j1 d^i2 e^j2`` differs from the closed formula."""
    bad = []
    d, e = gens["d"], gens["e"]
    for i1, j1, i2, j2 in itertools.product(range(3), range(2), range(3), range(2)):
        lhs = grp.prod(grp.power(d, i1), grp.power(e, j1), grp.power(d, i2), grp.power(e, j2))
        rhs = c35_word(grp, gens, a=2 * i2 * (i2 - 1) * j1 + i1 * i2 * j1, c=i2 * j1,
                       d=i1 + i2, e=j1 + j2)
        if lhs != rhs:
            bad.append((i1, j1, i2, j2))
    return bad


def build_c35() -> BuiltExample:
    """The order-243 group, ``Z = H u He`` with ``H = <G', d>``, and ``mu(d) = D``, ``mu(e) = E``."""
    pres = c35_presentation()
    grp, idx = pres.to_group()
    gens = {name: idx[pres.generator(i)] for i, name in enumerate(pres.names)}
    if grp.order != 243:
        raise VerificationError(Violation("order", (), grp.order, 243))
    derived = grp.derived_subgroup()
    if sorted(derived) != grp.subgroup_generated([gens["a"], gens["b"], gens["c"]]):
        raise VerificationError(Violation("derived subgroup", (), detail="G' != <a, b, c>"))
    d, e = gens["d"], gens["e"]
    # every z in Z is n d^i e^j with n in G', i < 3, j < 2
    decomp: dict[int, tuple[int, int, int]] = {}
    for nn in derived:
        for i in range(3):
            for j in range(2):
                decomp[grp.prod(nn, grp.power(d, i), grp.power(e, j))] = (nn, i, j)
    zs = sorted(decomp)
    h = sorted(z for z in zs if decomp[z][2] == 0)
    zpos = {z: k for k, z in enumerate(zs)}

    def w(**kw):
        return c35_word(grp, gens, **kw)

    def dmap(z, k=1):
        nn, i, j = decomp[z]
        return grp.prod(grp.conj(grp.power(d, k), nn),
                        w(a=k * (i + 2 * i * j) + k * (k - 1) * j, b=2 * i * k, c=2 * k * j),
                        grp.power(d, i), grp.power(e, j))

    def emap(z, k=1):
        nn, i, j = decomp[z]
        return grp.prod(grp.conj(grp.power(e, k), nn), grp.power(d, i + k * j), grp.power(e, j))

    dperm = [zpos[dmap(z)] for z in zs]
    eperm = [zpos[emap(z)] for z in zs]
    D = np.asarray(dperm)
    E = np.asarray(eperm)
    ident = np.arange(len(zs))
    checks = {
        "D^3 = id": bool(np.array_equal(D[D[D]], ident)),
        "E^3 = id": bool(np.array_equal(E[E[E]], ident)),
        "DE = ED": bool(np.array_equal(D[E], E[D])),
    }
    dk_ok = ek_ok = True
    dpow, epow = ident, ident
    for k in range(1, 4):
        dpow, epow = D[dpow], E[epow]
        dk_ok &= all(zs[dpow[zpos[z]]] == dmap(z, k) for z in zs)
        ek_ok &= all(zs[epow[zpos[z]]] == emap(z, k) for z in zs)
    checks["D^k formula (k = 1..3)"] = bool(dk_ok)
    checks["E^k formula (k = 1..3)"] = bool(ek_ok)
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise VerificationError(Violation("C35 permutations", (), detail=", ".join(failed)))
    mu = perm_hom_from_generators(
        grp, [gens["a"], gens["b"], gens["c"], d, e],
        [ident, ident, ident, D, E], len(zs))
    gm = check_generator_morphism(grp, zs, mu)
    return BuiltExample(grp, gm, gens, {"derived": derived, "H": h, "D": dperm, "E": eperm,
                                        "checks": checks,
                                        "diej_mismatches": diej_mismatches(grp, gens)})


def semidirect_from_action(a: FiniteGroup, c_h: BijectiveCocycle, action) -> tuple[FiniteGroup, BijectiveCocycle]:
    """``A x| H`` for abelian ``A`` and an action of ``H``, via :func:`semidirect_ah`."""
    act = GroupAction(c_h.group, a, action)
    g = semidirect_product(a, c_h.group, act)
    nh = c_h.group.order
    a_elems = [i * nh for i in range(a.order)]
    h_elems = list(range(nh))
    return g, semidirect_ah(g, a_elems, h_elems, c_h)


def inversion_action(h: FiniteGroup, a: FiniteGroup, generator_acts: int = 1) -> np.ndarray:
    """``h`` acts on abelian ``A`` by inversion when its image in ``C_2`` is non-trivial.

    Only for ``H`` cyclic of even order generated by element ``generator_acts``.
    """
    rows = np.empty((h.order, a.order), dtype=np.int64)
    for k in range(h.order):
        x = h.power(generator_acts, k)
        rows[x] = a.inv if k % 2 else np.arange(a.order)
    return rows


def automorphism_rows_ok(space: FiniteGroup, rows) -> bool:
    return non_automorphism(space, rows) is None
