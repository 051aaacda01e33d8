"""Independent reference implementations used only by the tests.

Nothing here imports the search code it is compared against: the
enumeration oracle is an unpruned numpy sweep over all ``(n!)^n`` tuples,
and the lifting oracle enumerates homomorphisms by generator images.
"""
from __future__ import annotations

import itertools

import numpy as np


def all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def brute_iyb_tuples(n: int) -> np.ndarray:
    """Every ``(lam(0), ..., lam(n-1))`` satisfying the IYB identity, as an ``(k, n, n)`` array."""
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    perms = all_perms(n)
    m = len(perms)
    idx = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64)
    lam = perms[idx]  # (T, n, n)
    laminv = np.argsort(lam, axis=2)
    t = np.arange(len(lam))
    ok = np.ones(len(lam), dtype=bool)
    for x in range(n):
        for y in range(n):
            u = laminv[:, x, y]  # lam(x)^-1 (y)
            v = laminv[:, y, x]
            lu = lam[t, u]  # (T, n)
            lv = lam[t, v]
            lhs = np.take_along_axis(lam[:, x, :], lu, axis=1)
            rhs = np.take_along_axis(lam[:, y, :], lv, axis=1)
            ok &= (lhs == rhs).all(axis=1)
    return lam[ok]


def canonical_under_relabeling(lam: np.ndarray) -> bytes:
    """Least encoding of ``pi lam(pi^-1 x) pi^-1`` over all ``pi``."""
    n = lam.shape[0]
    best = None
    for pi in itertools.permutations(range(n)):
        pi = np.array(pi)
        pinv = np.argsort(pi)
        new = np.empty_like(lam)
        for x in range(n):
            new[pi[x]] = pi[lam[x][pinv]]
        key = new.tobytes()
        if best is None or key < best:
            best = key
    return best


def brute_class_count(n: int) -> tuple[int, int]:
    """(labelled count, count up to relabeling)."""
    sols = brute_iyb_tuples(n)
    return len(sols), len({canonical_under_relabeling(s) for s in sols})


def brute_homomorphisms(table: np.ndarray, gens: list[int], degree: int):
    """All homomorphisms ``G -> Sym_degree`` given by images of ``gens`` (as row arrays)."""
    n = len(table)
    order = []
    for g in gens:
        k, x = 1, g
        while x != 0:
            x = table[x, g]
            k += 1
        order.append(k)
    perms = all_perms(degree)

    def perm_order(p):
        k, q = 1, p.copy()
        ident = np.arange(degree)
        while not np.array_equal(q, ident):
            q = p[q]
            k += 1
        return k

    pords = np.array([perm_order(p) for p in perms])
    cands = [perms[order[i] % pords == 0] for i in range(len(gens))]
    # BFS words for every element from the generators
    word = {0: []}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = int(table[x, g])
                if y not in word:
                    word[y] = word[x] + [i]
                    nxt.append(y)
        frontier = nxt
    assert len(word) == n
    for imgs in itertools.product(*cands):
        rows = np.empty((n, degree), dtype=np.int64)
        for x, w in word.items():
            p = np.arange(degree)
            for i in w:
                p = p[imgs[i]]  # p o img (right multiplication by the generator)
            rows[x] = p
        if all(np.array_equal(rows[table[a, b]], rows[a][rows[b]]) for a in range(n) for b in range(n)):
            yield rows


def brute_liftings(table, inv, gens, normal, coset_of, mubar):
    """IYB morphisms ``mu`` of G with ``N`` in ``ker mu`` inducing ``mubar`` on ``G/N``."""
    n = len(table)
    out = []
    ident = np.arange(n)
    for mu in brute_homomorphisms(table, gens, n):
        if not all(np.array_equal(mu[k], ident) for k in normal):
            continue
        ok = True
        for x in range(n):
            minv = np.argsort(mu[x])
            for y in range(n):
                if coset_of[mu[x][y]] != mubar[coset_of[x]][coset_of[y]]:
                    ok = False
                    break
                yinv = np.argsort(mu[y])
                if table[x, minv[y]] != table[y, yinv[x]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(mu)
    return out


def _endomorphism(table, gens, images):
    """The endomorphism of a group sending ``gens[i] -> images[i]``, or None."""
    n = len(table)
    phi = np.full(n, -1, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, images):
                y = table[x, s]
                v = table[phi[x], t]
                if phi[y] < 0:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    return None
        frontier = nxt
    if (phi < 0).any():
        return None
    if not np.array_equal(phi[table], table[phi[:, None], phi[None, :]]):
        return None
    return phi


def brute_trivial_quotient_liftings(table, gens, normal):
    """IYB morphisms of G with ``normal`` in the kernel inducing the trivial morphism on G/N.

    Requires ``normal`` to contain the derived subgroup, so every lifting
    factors through the abelian group G/N.  For such a lifting the element
    ``mu(y)^-1(x^-1)`` lies in ``x^-1 N``, so ``mu(x)(yz) = mu(x)(y) mu(x)(z)``:
    every ``mu(x)`` is an automorphism fixing each N-coset setwise.  We list
    those automorphisms by the images of ``gens``, keep assignments whose
    images commute and satisfy the identity on generator pairs (both
    necessary), assemble ``mu`` and test the identity on all pairs.
    Returns ``(liftings, automorphism_count, homomorphisms_tested)``.
    """
    table = np.asarray(table, dtype=np.int64)
    n = len(table)
    normal = list(normal)
    autos = []
    for imgs in itertools.product(*[[int(table[k, g]) for k in normal] for g in gens]):
        phi = _endomorphism(table, gens, imgs)
        if phi is not None and len(set(phi.tolist())) == n:
            autos.append(phi)
    # a generator word for one element of every N-coset; mu is constant on cosets
    coset = np.full(n, -1, dtype=np.int64)
    reps_words = []
    frontier = [(0, ())]
    while frontier:
        nxt = []
        for x, w in frontier:
            if coset[x] >= 0:
                continue
            c = len(reps_words)
            reps_words.append(w)
            for k in normal:
                coset[table[k, x]] = c
            nxt.extend((int(table[x, s]), w + (i,)) for i, s in enumerate(gens))
        frontier = nxt
    ident = np.arange(n)
    A = np.array(autos, dtype=np.int64).reshape(-1, n)
    Ainv = np.argsort(A, axis=1)
    # necessary conditions on every pair of generator images, as boolean matrices:
    # the images commute, and the identity holds at the pair (gens[i], gens[j])
    commute = np.array([(A[a][A] == A[:, A[a]]).all(axis=1) for a in range(len(A))]).reshape(len(A), len(A))
    ok = {}
    for i, si in enumerate(gens):
        for j, sj in enumerate(gens):
            if i < j:
                lhs = table[si, Ainv[:, sj]]
                rhs = table[sj, Ainv[:, si]]
                ok[i, j] = commute & (lhs[:, None] == rhs[None, :])
    choices = []

    def extend(prefix):
        if len(prefix) == len(gens):
            choices.append(tuple(prefix))
            return
        j = len(prefix)
        for b in range(len(A)):
            if all(ok[i, j][prefix[i], b] for i in range(j)):
                extend(prefix + [b])

    extend([])
    out = []
    assembled = 0
    for choice in choices:
        ims = [A[c] for c in choice]
        per_coset = []
        for w in reps_words:
            p = ident
            for i in w:
                p = p[ims[i]]
            per_coset.append(p)
        mu = np.array(per_coset)[coset]
        if any(not np.array_equal(mu[table[:, s]], mu[:, ims[i]]) for i, s in enumerate(gens)):
            continue  # mu(x s) = mu(x) mu(s) fails: not a homomorphism
        assembled += 1
        minv = np.argsort(mu, axis=1)
        lhs = table[ident[:, None], minv]  # x * mu(x)^-1(y)
        if np.array_equal(lhs, lhs.T):
            out.append(mu)
    return out, len(autos), assembled
