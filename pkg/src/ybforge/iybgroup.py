"""IYB morphisms, the star product, bijective 1-cocycles, and liftings.

An IYB morphism of ``G`` is a homomorphism ``mu: G -> Sym_G`` with

    x mu(x)^-1 (y) == y mu(y)^-1 (x)       for all x, y.

``mu`` is stored as a ``|G| x |G|`` array: ``mu[g, h] = mu(g)(h)``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExceeded, VerificationError, Violation
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupError,
    GroupHom,
    closure,
    isomorphic,
    non_automorphism,
    perm_hom_violation,
    quotient,
)
from .ybe import IYBMap, check_iyb_map


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class IYBMorphism:
    group: FiniteGroup
    mu: np.ndarray

    def __eq__(self, other) -> bool:
        return (isinstance(other, IYBMorphism) and self.group == other.group
                and np.array_equal(self.mu, other.mu))

    def __hash__(self):
        return hash(self.mu.tobytes())

    def inverse_rows(self) -> np.ndarray:
        return np.argsort(self.mu, axis=1)

    def kernel(self) -> list[int]:
        ident = np.arange(self.group.order)
        return [g for g in range(self.group.order) if np.array_equal(self.mu[g], ident)]

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "mu": self.mu.tolist()}


def _rows_are_perms(rows: np.ndarray) -> int | None:
    n = rows.shape[1]
    ok = (np.sort(rows, axis=1) == np.arange(n)).all(axis=1)
    bad = np.nonzero(~ok)[0]
    return int(bad[0]) if bad.size else None


def iybs_violation(group: FiniteGroup, mu: np.ndarray) -> Violation | None:
    """First ``(x, y)`` with ``x mu(x)^-1 (y) != y mu(y)^-1 (x)``."""
    muinv = np.argsort(mu, axis=1)
    side = group.table[np.arange(group.order)[:, None], muinv]  # side[x, y] = x mu(x)^-1 (y)
    bad = np.argwhere(side != side.T)
    if bad.size:
        x, y = map(int, bad[0])
        return Violation("IYBS identity", (x, y), int(side[x, y]), int(side[y, x]))
    return None


def morphism_violation(group: FiniteGroup, mu) -> Violation | None:
    mu = np.asarray(mu, dtype=np.int64)
    if mu.shape != (group.order, group.order):
        return Violation("shape", (), detail=f"mu must be {group.order} x {group.order}")
    g = _rows_are_perms(mu)
    if g is not None:
        return Violation("bijectivity", (g,), detail=f"mu({g}) is not a permutation")
    bad = perm_hom_violation(group, mu)
    if bad is not None:
        x, y = bad
        return Violation("homomorphism", bad, mu[group.table[x, y]].tolist(), mu[x][mu[y]].tolist())
    return iybs_violation(group, mu)


def check_iyb_morphism(group: FiniteGroup, mu) -> IYBMorphism:
    v = morphism_violation(group, mu)
    if v is not None:
        raise VerificationError(v)
    return IYBMorphism(group, _frozen(mu))


# cocycles

@dataclass(frozen=True, eq=False)
class BijectiveCocycle:
    """``pi: G -> A`` with ``pi(g h) = pi(g) alpha_g(pi(h))``, ``A`` abelian."""

    group: FiniteGroup
    target: FiniteGroup
    action: GroupAction
    pi: np.ndarray

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "target": self.target.to_json(),
                "action": self.action.per_element.tolist(), "pi": self.pi.tolist()}


def cocycle_violation(group: FiniteGroup, target: FiniteGroup, alpha, pi,
                      need_automorphisms: bool = True) -> Violation | None:
    alpha = np.asarray(alpha, dtype=np.int64)
    pi = np.asarray(pi, dtype=np.int64)
    if not target.is_abelian():
        return Violation("abelian target", (), detail="A is not abelian")
    if pi.shape != (group.order,) or target.order != group.order:
        return Violation("bijectivity", (), detail="pi must map G onto A with |G| = |A|")
    if not np.array_equal(np.sort(pi), np.arange(target.order)):
        return Violation("bijectivity", (), detail="pi is not a bijection")
    if alpha.shape != (group.order, target.order):
        return Violation("action", (), detail="alpha must be |G| x |A|")
    g = _rows_are_perms(alpha)
    if g is not None:
        return Violation("action", (g,), detail=f"alpha({g}) is not a bijection")
    bad = perm_hom_violation(group, alpha)
    if bad is not None:
        return Violation("action", bad, detail="alpha is not a homomorphism")
    # pi(g h) == pi(g) * alpha_g(pi(h))
    lhs = pi[group.table]
    rhs = target.table[pi[:, None], alpha[:, pi]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y = map(int, bad[0])
        return Violation("cocycle identity", (x, y), int(lhs[x, y]), int(rhs[x, y]))
    if need_automorphisms:
        g = non_automorphism(target, alpha)
        if g is not None:
            return Violation("action by automorphisms", (g,))
    return None


def check_cocycle(group: FiniteGroup, target: FiniteGroup, alpha, pi) -> BijectiveCocycle:
    v = cocycle_violation(group, target, alpha, pi)
    if v is not None:
        raise VerificationError(v)
    action = GroupAction(group, target, alpha, check=False)
    return BijectiveCocycle(group, target, action, _frozen(pi))


def star_product(m: IYBMorphism) -> tuple[FiniteGroup, BijectiveCocycle]:
    """``A = (G, *)`` with ``a * b = a mu(a)^-1 (b)``; the identity map is a cocycle."""
    g = m.group
    muinv = m.inverse_rows()
    table = g.table[np.arange(g.order)[:, None], muinv]
    a = FiniteGroup(table, check=True)  # identity, latin square, associativity
    if not a.is_abelian():
        raise VerificationError(Violation("star product", (), detail="(G, *) is not abelian"))
    # the *-inverse of x is mu(x)(x^-1)
    star_inv = m.mu[np.arange(g.order), g.inv]
    if not np.array_equal(star_inv, a.inv):
        x = int(np.nonzero(star_inv != a.inv)[0][0])
        raise VerificationError(Violation("star inverse", (x,), int(star_inv[x]), int(a.inv[x])))
    cocycle = check_cocycle(g, a, m.mu, np.arange(g.order))
    return a, cocycle


def cocycle_to_morphism(c: BijectiveCocycle) -> IYBMorphism:
    """``mu(g) = pi^-1 o alpha_g o pi``."""
    pinv = np.argsort(c.pi)
    mu = pinv[c.action.per_element[:, c.pi]]
    return check_iyb_morphism(c.group, mu)


class PreconditionError(ValueError):
    pass


def check_action_forcing(group: FiniteGroup, target: FiniteGroup, alpha, pi) -> bool:
    """Whether every ``alpha_g`` preserves the multiplication of ``A``.

    ``alpha`` only has to be a homomorphism into ``Sym_A``.  Unmet
    preconditions raise :class:`PreconditionError` instead of returning.
    """
    v = cocycle_violation(group, target, alpha, pi, need_automorphisms=False)
    if v is not None:
        raise PreconditionError(str(v))
    return non_automorphism(target, alpha) is None


# kernels and quotients

@dataclass(frozen=True)
class KernelReport:
    kernel: list[int]
    is_abelian: bool
    conjugation_identity_holds: bool


def kernel_properties(m: IYBMorphism) -> KernelReport:
    g = m.group
    ker = m.kernel()
    k = np.asarray(ker)
    sub = g.table[np.ix_(k, k)]
    abelian = bool(np.array_equal(sub, sub.T))
    x = np.arange(g.order)[:, None]
    conj = g.table[g.table[x, k[None, :]], g.inv[x]]
    holds = bool(np.array_equal(m.mu[:, k], conj))
    return KernelReport(ker, abelian, holds)


def quotient_morphism(m: IYBMorphism, normal: Sequence[int]) -> tuple[IYBMorphism, GroupHom]:
    """The induced morphism on ``G/N`` for normal ``N`` inside ``ker(mu)``."""
    g = m.group
    normal = sorted(set(int(e) for e in normal))
    kernel = set(m.kernel())
    if not set(normal) <= kernel:
        raise GroupError("N is not contained in ker(mu)")
    q, proj = quotient(g, normal)
    p = np.asarray(proj.images)
    induced = p[m.mu]  # induced[x, y] = class of mu(x)(y)
    qmu = np.full((q.order, q.order), -1, dtype=np.int64)
    for x in range(g.order):
        for y in range(g.order):
            cur = qmu[p[x], p[y]]
            if cur < 0:
                qmu[p[x], p[y]] = induced[x, y]
            elif cur != induced[x, y]:
                raise VerificationError(Violation("well-definedness on cosets", (x, y),
                                                  int(cur), int(induced[x, y])))
    return check_iyb_morphism(q, qmu), proj


@dataclass
class LiftResult:
    liftings: list[IYBMorphism]
    exhaustive: bool
    nodes: int
    branch_points: list[tuple[int, int]]
    normal_size: int
    rejected: int = 0

    @property
    def space_size(self) -> int:
        """Candidates covered: one factor ``|N|`` per generator pair that needed a choice."""
        return self.normal_size ** len(self.branch_points)


def lift_search(group: FiniteGroup, normal: Sequence[int], mubar: IYBMorphism,
                projection: GroupHom, gens: Sequence[int], budget: int = -1) -> LiftResult:
    """All IYB morphisms of ``G`` inducing ``mubar`` on ``G/N``.

    ``mu`` is fixed on ``N`` by ``mu(x)(k) = x k x^-1``; the values
    ``mu(g)(h)`` for ``g, h`` in ``gens`` are chosen in ``N``-cosets determined
    by ``mubar``, and everything else follows from the homomorphism property,
    the IYBS identity and ``mu(x)(y z) = mu(x)(y) mu(mu(y)^-1 (x^-1))^-1 (z)``.
    Complete tables are re-verified with :func:`check_iyb_morphism`.
    """
    normal = sorted(set(int(e) for e in normal))
    if not group.is_normal(normal):
        raise GroupError("N is not a normal subgroup")
    k = np.asarray(normal)
    sub = group.table[np.ix_(k, k)]
    if not np.array_equal(sub, sub.T):
        raise GroupError("N is not abelian")
    q = mubar.group
    coset_of = np.asarray(projection.images, dtype=np.int64)
    if projection.source != group or projection.target != q:
        raise GroupError("projection must map G onto the group of mubar")
    if sorted(np.nonzero(coset_of == 0)[0].tolist()) != normal:
        raise GroupError("projection kernel is not N")
    if not set(group.subgroup_generated(gens)) == set(range(group.order)):
        raise GroupError("gens do not generate G")
    cosets = [np.nonzero(coset_of == c)[0].tolist() for c in range(q.order)]
    # representatives of each coset first: row c of the engine uses cosets[c][0]
    sols, branched, nodes, exhaustive = kernels.lift_search(
        group.table, group.inv, coset_of, q.table, q.inv, cosets, mubar.mu,
        list(gens), budget)
    liftings = []
    rejected = 0
    for t in sols:
        mu = np.asarray(t)[coset_of]
        if morphism_violation(group, mu) is None:
            liftings.append(IYBMorphism(group, _frozen(mu)))
        else:
            rejected += 1
    gens = list(dict.fromkeys(int(g) for g in gens))
    pairs = []
    for h in gens:
        for g in gens:
            cell = (int(coset_of[g]), h)
            if cell not in [(int(coset_of[a]), b) for a, b in pairs]:
                pairs.append((g, h))
    points = [pairs[i] for i in sorted(branched)]
    return LiftResult(liftings, bool(exhaustive), int(nodes), points, len(normal), rejected)


# generator morphisms

@dataclass(frozen=True, eq=False)
class GeneratorMorphism:
    """``mu: G -> Sym_Z`` for a generating subset ``Z``; ``mu[g, i]`` indexes into ``gen_set``."""

    group: FiniteGroup
    gen_set: tuple[int, ...]
    mu: np.ndarray

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "gen_set": list(self.gen_set), "mu": self.mu.tolist()}


def generator_morphism_violation(group: FiniteGroup, gen_set: Sequence[int], mu) -> Violation | None:
    zs = np.asarray(gen_set, dtype=np.int64)
    mu = np.asarray(mu, dtype=np.int64)
    m = len(zs)
    if len(set(zs.tolist())) != m:
        return Violation("generating set", (), detail="Z has repeated elements")
    if set(group.subgroup_generated(zs.tolist())) != set(range(group.order)):
        return Violation("generating set", (), detail="Z does not generate G")
    if mu.shape != (group.order, m):
        return Violation("shape", (), detail=f"mu must be {group.order} x {m}")
    g = _rows_are_perms(mu)
    if g is not None:
        return Violation("bijectivity", (g,), detail=f"mu({g}) is not a permutation of Z")
    bad = perm_hom_violation(group, mu)
    if bad is not None:
        return Violation("homomorphism", bad)
    muinv = np.argsort(mu[zs], axis=1)  # muinv[i, j]: index of mu(z_i)^-1 (z_j)
    side = group.table[zs[:, None], zs[muinv]]
    bad = np.argwhere(side != side.T)
    if bad.size:
        i, j = map(int, bad[0])
        return Violation("IYBS identity on Z", (int(zs[i]), int(zs[j])), int(side[i, j]), int(side[j, i]))
    return None


def check_generator_morphism(group: FiniteGroup, gen_set: Sequence[int], mu) -> GeneratorMorphism:
    v = generator_morphism_violation(group, gen_set, mu)
    if v is not None:
        raise VerificationError(v)
    return GeneratorMorphism(group, tuple(int(z) for z in gen_set), _frozen(mu))


class _WordValue:
    """``Lam`` on multisets of letters of ``Z``: ``Lam(z + a) = z Lam(mu(z)^-1 a)``.

    Words are sorted tuples of indices into ``Z``.  Each value is computed
    along two different first letters when possible and the results compared.
    """

    def __init__(self, gm: GeneratorMorphism):
        self.gm = gm
        self.table = gm.group.table
        self.zs = gm.gen_set
        self.zinv = np.argsort(gm.mu[list(gm.gen_set)], axis=1).tolist()
        self.memo: dict[tuple[int, ...], int] = {(): 0}

    def __call__(self, word: tuple[int, ...]) -> int:
        hit = self.memo.get(word)
        if hit is not None:
            return hit
        vals = []
        seen = set()
        for pos, z in enumerate(word):
            if z in seen:
                continue
            seen.add(z)
            rest = word[:pos] + word[pos + 1:]
            inv = self.zinv[z]
            moved = tuple(sorted(inv[i] for i in rest))
            vals.append(int(self.table[self.zs[z], self(moved)]))
            if len(vals) == 2:
                break
        if len(vals) == 2 and vals[0] != vals[1]:
            raise VerificationError(Violation("well-definedness of the word extension", word,
                                              vals[0], vals[1]))
        self.memo[word] = vals[0]
        return vals[0]


def full_morphism(gm: GeneratorMorphism) -> IYBMorphism:
    """Extend a generator morphism to an IYB morphism ``G -> Sym_G``.

    ``mu(g)`` acts on ``Z`` and hence on words; ``mu(g)(h)`` is the value of
    the permuted word of ``h``.  The result is verified.
    """
    g = gm.group
    value = _WordValue(gm)
    zs = gm.gen_set
    words: list[tuple[int, ...] | None] = [None] * g.order
    words[0] = ()
    queue = [0]
    head = 0
    mu_z = gm.mu.tolist()
    while head < len(queue):
        h = queue[head]
        head += 1
        for i, z in enumerate(zs):
            y = int(g.table[h, z])
            if words[y] is None:
                # h z = h * mu(h)(z) in the star product
                w = tuple(sorted(words[h] + (mu_z[h][i],)))
                if value(w) != y:
                    raise VerificationError(Violation("word extension", (h, z), value(w), y))
                words[y] = w
                queue.append(y)
    if any(w is None for w in words):
        raise GroupError("Z does not generate G")
    mu = np.empty((g.order, g.order), dtype=np.int64)
    for x in range(g.order):
        sigma = mu_z[x]
        for h in range(g.order):
            mu[x, h] = value(tuple(sorted(sigma[i] for i in words[h])))
    return check_iyb_morphism(g, mu)


@dataclass
class FullMapResult:
    iyb_map: IYBMap
    closure: FiniteGroup
    embedding: np.ndarray  # row g: lambda-image of g, as a permutation of X
    zsize: int
    ysize: int
    isomorphic: bool | None = None
    notes: list[str] = field(default_factory=list)


def generator_morphism_to_full(gm: GeneratorMorphism, y_action=None,
                               check_isomorphism: bool = True) -> FullMapResult:
    """The IYB map on ``X = Z u Y``: ``lam(z) = mu(z) + alpha(z)``, ``lam(y) = id``.

    ``y_action`` is a faithful action of ``G`` on ``Y`` (one row per element);
    the regular action is used by default.  ``Z`` occupies points
    ``0..|Z|-1`` and ``Y`` the rest.
    """
    g = gm.group
    alpha = g.table if y_action is None else np.asarray(y_action, dtype=np.int64)
    if alpha.shape[0] != g.order:
        raise GroupError("the action on Y needs one row per group element")
    if perm_hom_violation(g, alpha) is not None:
        raise GroupError("the given action on Y is not a homomorphism")
    ident = np.arange(alpha.shape[1])
    if sum(np.array_equal(alpha[x], ident) for x in range(g.order)) != 1:
        raise GroupError("the action on Y is not faithful")
    m = len(gm.gen_set)
    ny = alpha.shape[1]
    emb = np.concatenate([gm.mu, alpha + m], axis=1)  # g -> mu(g) + alpha(g) on Z u Y
    lam = [emb[z].tolist() for z in gm.gen_set] + [list(range(m + ny))] * ny
    iyb = check_iyb_map(lam)
    cl = closure([emb[z] for z in gm.gen_set], m + ny)
    res = FullMapResult(iyb, cl, emb, m, ny)
    if cl.order != g.order:
        raise VerificationError(Violation("closure order", (), cl.order, g.order))
    if check_isomorphism:
        res.isomorphic = isomorphic(cl, g)
        if res.isomorphic is None:
            res.notes.append("isomorphism search skipped above the cap; the embedding is explicit")
    return res
