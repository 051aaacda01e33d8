"""Finite groups as Cayley tables, with homomorphisms, actions and products.

Element ``0`` is always the identity.  Tables are stored as read-only numpy
arrays, so a group can be shared freely once built.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import kernels
from .perm import Permutation

DEFAULT_ORDER_CAP = 4096
DEFAULT_ISO_CAP = 512


class GroupError(ValueError):
    pass


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of ``a * b``.  ``perms`` optionally records a
    permutation realising each element (set by :func:`closure`).
    """

    def __init__(self, table, labels: Sequence[str] | None = None, perms=None,
                 check: bool = True, check_assoc: bool = True):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("Cayley table must be a non-empty square array")
        n = table.shape[0]
        if check:
            ident = np.arange(n)
            if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
                raise GroupError("element 0 is not the identity")
            srt = np.sort(table, axis=1)
            if not (srt == ident).all():
                raise GroupError("some row of the table is not a permutation")
            srt = np.sort(table, axis=0)
            if not (srt == ident[:, None]).all():
                raise GroupError("some column of the table is not a permutation")
            if check_assoc:
                bad = kernels.associativity_violation(table)
                if bad is not None:
                    raise GroupError(f"table is not associative at {bad}")
        self.table = _frozen(table)
        self.order = n
        inv = np.argmax(self.table == 0, axis=1)
        self.inv = _frozen(inv)
        if labels is not None:
            labels = [str(s) for s in labels]
            if len(labels) != n:
                raise GroupError("labels must have one entry per element")
        self.labels = labels
        if perms is not None:
            perms = _frozen(perms)
            if perms.shape[0] != n:
                raise GroupError("perms must have one row per element")
        self.perms = perms
        self._cache: dict = {}

    # basic arithmetic
    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def prod(self, *elems: int) -> int:
        r = 0
        for e in elems:
            r = int(self.table[r, e])
        return r

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        r = 0
        for _ in range(k):
            r = int(self.table[r, a])
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inv[g]])

    def commutator(self, x: int, y: int) -> int:
        """``x y x^-1 y^-1``."""
        t = self.table
        return int(t[t[t[x, y], self.inv[x]], self.inv[y]])

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n)
            k = 1
            todo = np.ones(n, dtype=bool)
            while todo.any():
                hit = todo & (cur == 0)
                orders[hit] = k
                todo &= ~hit
                cur = self.table[cur, np.arange(n)]
                k += 1
            orders[0] = 1
            self._cache["orders"] = _frozen(orders)
        return self._cache["orders"]

    def element_order(self, a: int) -> int:
        return int(self.element_orders()[a])

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def center(self) -> list[int]:
        if "center" not in self._cache:
            mask = (self.table == self.table.T).all(axis=1)
            self._cache["center"] = [int(i) for i in np.nonzero(mask)[0]]
        return list(self._cache["center"])

    def centralizer_sizes(self) -> np.ndarray:
        if "csizes" not in self._cache:
            self._cache["csizes"] = _frozen((self.table == self.table.T).sum(axis=1))
        return self._cache["csizes"]

    def subgroup_generated(self, gens: Iterable[int]) -> list[int]:
        """Sorted element list of the subgroup generated by ``gens``."""
        gens = sorted({int(g) for g in gens} - {0})
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        while frontier.size:
            nxt = np.unique(self.table[np.ix_(frontier, gens)]) if gens else np.array([], dtype=np.int64)
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return [int(i) for i in np.nonzero(seen)[0]]

    def commutator_subgroup(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        """Subgroup generated by all ``(x, y)`` with ``x`` in ``a``, ``y`` in ``b``."""
        t = self.table
        xa = np.asarray(list(a))[:, None]
        yb = np.asarray(list(b))[None, :]
        comm = t[t[t[xa, yb], self.inv[xa]], self.inv[yb]]
        return self.subgroup_generated(np.unique(comm).tolist())

    def derived_subgroup(self) -> list[int]:
        if "derived" not in self._cache:
            every = range(self.order)
            self._cache["derived"] = self.commutator_subgroup(every, every)
        return list(self._cache["derived"])

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = sorted(set(int(e) for e in elems))
        if not s or s[0] != 0:
            return False
        idx = np.asarray(s)
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        return bool(mask[self.table[np.ix_(idx, idx)]].all())

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = sorted(set(int(e) for e in elems))
        if not self.is_subgroup(s):
            return False
        mask = np.zeros(self.order, dtype=bool)
        mask[s] = True
        g = np.arange(self.order)[:, None]
        k = np.asarray(s)[None, :]
        conj = self.table[self.table[g, k], self.inv[g]]
        return bool(mask[conj].all())

    def left_regular(self) -> np.ndarray:
        """Row ``g`` is the permutation ``x -> g x`` of the elements."""
        return self.table

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def to_json(self) -> dict:
        out: dict = {"order": self.order, "table": self.table.tolist()}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        if self.perms is not None:
            out["perms"] = self.perms.tolist()
        return out

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> FiniteGroup:
        table = obj["table"]
        if obj.get("order", len(table)) != len(table):
            raise GroupError("order does not match the table size")
        return cls(table, labels=obj.get("labels"), perms=obj.get("perms"), check=check)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        images = np.asarray(self.images, dtype=np.int64)
        if images.shape != (self.source.order,):
            raise GroupError("one image per source element required")
        if images[0] != 0:
            raise GroupError("identity must map to identity")
        lhs = images[self.source.table]
        rhs = self.target.table[images[:, None], images[None, :]]
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise GroupError(f"not a homomorphism at ({bad[0]}, {bad[1]})")
        object.__setattr__(self, "images", tuple(int(i) for i in images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def kernel(self) -> list[int]:
        return [i for i, v in enumerate(self.images) if v == 0]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)


def perm_hom_violation(group: FiniteGroup, per_element) -> tuple[int, int] | None:
    """First ``(g, h)`` with ``P[g h] != P[g] o P[h]``, for a row-per-element array."""
    p = np.asarray(per_element)
    for g in range(group.order):
        lhs = p[group.table[g]]  # rows P[g h] for every h
        rhs = p[g][p]  # rows P[g] o P[h]
        bad = np.nonzero((lhs != rhs).any(axis=1))[0]
        if bad.size:
            return (g, int(bad[0]))
    return None


class GroupAction:
    """An action of ``actor`` on the elements of ``space``.

    ``per_element[g]`` is the permutation of ``space`` indices given by ``g``.
    With ``by_automorphisms`` every permutation must preserve the table.
    """

    def __init__(self, actor: FiniteGroup, space: FiniteGroup, per_element,
                 by_automorphisms: bool = True, check: bool = True):
        per = np.asarray(per_element, dtype=np.int64)
        if per.shape != (actor.order, space.order):
            raise GroupError("per_element must be |actor| x |space|")
        if check:
            if not (np.sort(per, axis=1) == np.arange(space.order)).all():
                raise GroupError("some action element is not a bijection")
            if not np.array_equal(per[0], np.arange(space.order)):
                raise GroupError("identity does not act trivially")
            bad = perm_hom_violation(actor, per)
            if bad is not None:
                raise GroupError(f"not an action: fails at {bad}")
            if by_automorphisms:
                g = non_automorphism(space, per)
                if g is not None:
                    raise GroupError(f"element {g} does not act by an automorphism")
        self.actor = actor
        self.space = space
        self.per_element = _frozen(per)
        self.by_automorphisms = by_automorphisms

    def __call__(self, g: int, a: int) -> int:
        return int(self.per_element[g, a])

    @classmethod
    def trivial(cls, actor: FiniteGroup, space: FiniteGroup) -> GroupAction:
        per = np.tile(np.arange(space.order), (actor.order, 1))
        return cls(actor, space, per, check=False)


def non_automorphism(space: FiniteGroup, per) -> int | None:
    """First row of ``per`` that does not preserve the multiplication of ``space``."""
    per = np.asarray(per)
    t = space.table
    for g in range(per.shape[0]):
        p = per[g]
        if not np.array_equal(p[t], t[p[:, None], p[None, :]]):
            return g
    return None


# constructions of groups

def closure(generators: Sequence[Sequence[int]], degree: int,
            cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """The permutation group generated by ``generators`` as a Cayley table.

    Elements are listed in breadth-first order over right multiplication by
    the generators, identity first.
    """
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != degree:
            raise GroupError(f"generator of degree {len(g)}, expected {degree}")
        Permutation(g)
        if g not in gens and g != tuple(range(degree)):
            gens.append(g)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    parent = [(-1, -1)]
    head = 0
    right = [[] for _ in gens]
    while head < len(elems):
        x = elems[head]
        for s, g in enumerate(gens):
            y = tuple(x[i] for i in g)  # x o g
            j = index.get(y)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise GroupError(f"closure exceeds the order cap {cap}")
                index[y] = j
                elems.append(y)
                parent.append((head, s))
            right[s].append(j)
        head += 1
    m = len(elems)
    right_arr = np.array(right, dtype=np.int64).reshape(len(gens), m)
    table = np.empty((m, m), dtype=np.int64)
    table[:, 0] = np.arange(m)
    for j in range(1, m):
        p, s = parent[j]
        table[:, j] = right_arr[s][table[:, p]]
    return FiniteGroup(table, perms=np.array(elems, dtype=np.int64).reshape(m, degree),
                       check=False)


def perm_index(group: FiniteGroup) -> dict[tuple[int, ...], int]:
    if group.perms is None:
        raise GroupError("group carries no permutation realisation")
    if "perm_index" not in group._cache:
        group._cache["perm_index"] = {tuple(r): i for i, r in enumerate(group.perms.tolist())}
    return group._cache["perm_index"]


def subgroup(group: FiniteGroup, elems: Iterable[int]) -> tuple[FiniteGroup, list[int]]:
    """Restrict to a subgroup; returns the new group and its element list.

    New index ``i`` corresponds to ``elems[i]`` of the ambient group, with the
    list sorted so that the identity comes first.
    """
    elems = sorted({int(e) for e in elems})
    if not group.is_subgroup(elems):
        raise GroupError("elements do not form a subgroup")
    pos = np.full(group.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    idx = np.asarray(elems)
    table = pos[group.table[np.ix_(idx, idx)]]
    labels = [group.labels[e] for e in elems] if group.labels is not None else None
    perms = group.perms[idx] if group.perms is not None else None
    return FiniteGroup(table, labels=labels, perms=perms, check=False), elems


def quotient(group: FiniteGroup, normal: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` on cosets, ordered by their minimal element."""
    normal = sorted({int(e) for e in normal})
    if not group.is_subgroup(normal):
        raise GroupError("N is not a subgroup")
    if not group.is_normal(normal):
        raise GroupError("N is not normal")
    reps = np.min(group.table[:, normal], axis=1)  # minimal element of g N
    rep_list = sorted(set(reps.tolist()))
    pos = {r: i for i, r in enumerate(rep_list)}
    proj = np.array([pos[r] for r in reps.tolist()], dtype=np.int64)
    rep_arr = np.asarray(rep_list)
    table = proj[group.table[np.ix_(rep_arr, rep_arr)]]
    q = FiniteGroup(table, check=False)
    return q, GroupHom(group, q, tuple(proj.tolist()))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """``G x H`` with ``(i, j)`` stored at index ``i * |H| + j``."""
    return semidirect_product(g, h, None)


def semidirect_product(g: FiniteGroup, h: FiniteGroup, action: GroupAction | None) -> FiniteGroup:
    """``G x| H`` with ``(g1, h1)(g2, h2) = (g1 h1(g2), h1 h2)``.

    Pairs ``(g, h)`` are stored at index ``g * |H| + h``.
    """
    if action is not None:
        if action.actor is not h and action.actor != h:
            raise GroupError("action must be by the second factor")
        if action.space is not g and action.space != g:
            raise GroupError("action must be on the first factor")
        if not action.by_automorphisms or non_automorphism(g, action.per_element) is not None:
            raise GroupError("action is not by automorphisms")
        per = action.per_element
    else:
        per = np.tile(np.arange(g.order), (h.order, 1))
    ng, nh = g.order, h.order
    g1 = np.repeat(np.arange(ng), nh)[:, None]
    h1 = np.tile(np.arange(nh), ng)[:, None]
    g2 = g1.T
    h2 = h1.T
    gg = g.table[g1, per[h1, g2]]
    hh = h.table[h1, h2]
    table = gg * nh + hh
    labels = None
    if g.labels is not None or h.labels is not None:
        labels = [f"({g.label(i)},{h.label(j)})" for i in range(ng) for j in range(nh)]
    return FiniteGroup(table, labels=labels, check=False)


def products(g: FiniteGroup, h: FiniteGroup, action: GroupAction | None = None) -> FiniteGroup:
    """Direct product, or the semidirect product when an action of ``h`` on ``g`` is given."""
    return semidirect_product(g, h, action)


# invariants and isomorphism

@dataclass(frozen=True)
class GroupInvariants:
    order: int
    center_size: int
    derived_subgroup_size: int
    order_profile: tuple[tuple[int, int], ...]
    is_abelian: bool
    nilpotency_class_or_none: int | None

    def fingerprint(self) -> tuple:
        return (self.order, self.center_size, self.derived_subgroup_size, self.order_profile)


def nilpotency_class(group: FiniteGroup) -> int | None:
    """Length of the lower central series, or ``None`` if it stalls."""
    every = list(range(group.order))
    cur = every
    k = 0
    while len(cur) > 1:
        nxt = group.commutator_subgroup(cur, every)
        if len(nxt) == len(cur):
            return None
        cur = nxt
        k += 1
    return k


def group_invariants(group: FiniteGroup) -> GroupInvariants:
    prof = Counter(group.element_orders().tolist())
    return GroupInvariants(
        order=group.order,
        center_size=len(group.center()),
        derived_subgroup_size=len(group.derived_subgroup()),
        order_profile=tuple(sorted(prof.items())),
        is_abelian=group.is_abelian(),
        nilpotency_class_or_none=nilpotency_class(group),
    )


def fingerprint(group: FiniteGroup) -> tuple:
    if "fingerprint" not in group._cache:
        group._cache["fingerprint"] = group_invariants(group).fingerprint()
    return group._cache["fingerprint"]


def generating_set(group: FiniteGroup) -> list[int]:
    """Greedy generators: repeatedly add an element of largest order outside the span."""
    orders = group.element_orders()
    by_order = sorted(range(1, group.order), key=lambda e: (-int(orders[e]), e))
    gens: list[int] = []
    span = {0}
    for e in by_order:
        if len(span) == group.order:
            break
        if e not in span:
            gens.append(e)
            span = set(group.subgroup_generated(gens))
    return gens


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> np.ndarray | None:
    """An isomorphism ``G -> H`` as an index array, ``None`` if none exists."""
    if g.order != h.order:
        return None
    if fingerprint(g) != fingerprint(h):
        return None
    gens = generating_set(g)
    og, oh = g.element_orders(), h.element_orders()
    cg, ch = g.centralizer_sizes(), h.centralizer_sizes()
    cands = [[int(y) for y in range(h.order) if oh[y] == og[x] and ch[y] == cg[x]] for x in gens]
    chosen: list[int] = []

    def search(i):
        if i == len(gens):
            phi = kernels.extend_hom(g.table, h.table, gens, chosen)
            if phi is not None and (phi >= 0).all():
                return phi
            return None
        for y in cands[i]:
            chosen.append(y)
            phi = kernels.extend_hom(g.table, h.table, gens[: i + 1], chosen)
            if phi is not None:
                res = search(i + 1)
                if res is not None:
                    return res
            chosen.pop()
        return None

    return search(0)


def isomorphic(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ISO_CAP) -> bool | None:
    """Exact isomorphism test; ``None`` means "unknown" (orders above ``cap``)."""
    if g.order != h.order:
        return False
    if g.order > cap:
        return None
    if fingerprint(g) != fingerprint(h):
        return False
    if g.is_abelian():
        # finite abelian groups are determined by how many elements have each order
        return True
    return find_isomorphism(g, h) is not None


# small groups

def cyclic(n: int) -> FiniteGroup:
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, check=False)


def abelian(*orders: int) -> FiniteGroup:
    out = cyclic(1)
    for k in orders:
        out = direct_product(out, cyclic(k))
    return out


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return closure([], max(n, 1))
    gens = [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]
    return closure(gens, n)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, acting on ``order // 2`` points."""
    m = order // 2
    if m < 3:
        if order == 4:
            return abelian(2, 2)
        return cyclic(order)
    rot = Permutation([(i + 1) % m for i in range(m)])
    ref = Permutation([(-i) % m for i in range(m)])
    return closure([rot, ref], m)


def quaternion() -> FiniteGroup:
    """Q8 via its regular representation on {±1, ±i, ±j, ±k}."""
    # points: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k; left multiplication
    i = Permutation([2, 3, 1, 0, 6, 7, 5, 4])
    j = Permutation([4, 5, 7, 6, 1, 0, 2, 3])
    return closure([i, j], 8)


def heisenberg(p: int = 3) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p, as triples ``(a, b, c)``."""
    trip = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    index = {t: k for k, t in enumerate(trip)}
    n = len(trip)
    table = np.empty((n, n), dtype=np.int64)
    for x, (a1, b1, c1) in enumerate(trip):
        for y, (a2, b2, c2) in enumerate(trip):
            table[x, y] = index[((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p)]
    return FiniteGroup(table, check=False)


def small_faithful_action(group: FiniteGroup) -> np.ndarray:
    """A faithful permutation action of small degree, one row per element.

    Uses left multiplication on the cosets of the largest core-free cyclic
    subgroup (the regular action when only the trivial one qualifies).
    """
    orders = group.element_orders()
    best: list[int] = [0]
    for e in sorted(range(1, group.order), key=lambda e: (-int(orders[e]), e)):
        if int(orders[e]) <= len(best):
            break
        cyc = group.subgroup_generated([e])
        core = set(cyc)
        for g in range(group.order):
            core &= {group.conj(g, k) for k in cyc}
            if len(core) == 1:
                break
        if len(core) == 1:
            best = cyc
            break
    # left cosets g H, identified by their minimal element
    reps_of = np.min(group.table[:, best], axis=1)
    reps = sorted(set(reps_of.tolist()))
    pos = {r: i for i, r in enumerate(reps)}
    coset = np.array([pos[r] for r in reps_of.tolist()], dtype=np.int64)
    rep_arr = np.asarray(reps)
    return coset[group.table[:, rep_arr]]


def perm_hom_from_generators(group: FiniteGroup, gens: Sequence[int], images,
                             degree: int) -> np.ndarray:
    """The homomorphism ``G -> Sym_degree`` sending ``gens[i]`` to ``images[i]``.

    Rows are indexed by group elements.  Raises :class:`GroupError` when the
    generators do not generate ``G`` or the assignment does not extend (i.e.
    the images violate a relation of ``G``).
    """
    gens = [int(g) for g in gens]
    imgs = [np.asarray(p, dtype=np.int64) for p in images]
    if any(p.shape != (degree,) for p in imgs):
        raise GroupError("image permutation of the wrong degree")
    rows = np.full((group.order, degree), -1, dtype=np.int64)
    rows[0] = np.arange(degree)
    known = np.zeros(group.order, dtype=bool)
    known[0] = True
    queue = [0]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for s, p in zip(gens, imgs):
            y = int(group.table[x, s])
            val = rows[x][p]  # rows[x] o p
            if not known[y]:
                rows[y] = val
                known[y] = True
                queue.append(y)
            elif not np.array_equal(rows[y], val):
                raise GroupError(f"generator images violate a relation (at element {y})")
    if not known.all():
        raise GroupError("the given elements do not generate the group")
    return rows
