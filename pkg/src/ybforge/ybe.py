"""IYB maps, set-theoretic solutions, and the correspondence between them.

An IYB map on ``X = {0..n-1}`` is ``lam: X -> Sym_X`` with

    lam(x) o lam(lam(x)^-1 (y)) == lam(y) o lam(lam(y)^-1 (x))

and it determines the involutive non-degenerate solution
``r(x, y) = (lam(x)(y), lam(lam(x)(y))^-1 (x))``.
"""
from __future__ import annotations

import itertools
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels
from .errors import BudgetExceeded, VerificationError, Violation
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, closure
from .perm import Permutation, all_permutations, direct_sum

DEFAULT_WORD_CAP = 12
BRAID_POINT_CAP = 64


@dataclass(frozen=True)
class IYBMap:
    size: int
    lam: tuple[Permutation, ...]

    def array(self) -> np.ndarray:
        return np.array(self.lam, dtype=np.int64).reshape(self.size, self.size)

    def __call__(self, x: int) -> Permutation:
        return self.lam[x]

    def image_contains_identity(self) -> bool:
        return any(p.is_identity() for p in self.lam)

    def closure(self, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
        return closure(list(self.lam), max(self.size, 1), cap=cap)

    def relabel(self, pi: Sequence[int]) -> IYBMap:
        """The map ``lam'(pi(x)) = pi o lam(x) o pi^-1``."""
        pi = Permutation(pi)
        new = [None] * self.size
        for x in range(self.size):
            new[pi[x]] = self.lam[x].conjugate(pi)
        return IYBMap(self.size, tuple(new))

    def to_json(self) -> dict:
        return {"size": self.size, "lambda": [list(p) for p in self.lam]}

    @classmethod
    def from_json(cls, obj: dict) -> IYBMap:
        return check_iyb_map(obj["lambda"], size=obj.get("size"))


@dataclass(frozen=True)
class SetSolution:
    """``r(x, y) = (f[x][y], g[y][x])``."""

    size: int
    f: tuple[tuple[int, ...], ...]
    g: tuple[tuple[int, ...], ...]

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.f[x][y], self.g[y][x]

    def to_json(self) -> dict:
        return {"size": self.size, "f": [list(p) for p in self.f], "g": [list(p) for p in self.g]}

    @classmethod
    def from_json(cls, obj: dict) -> SetSolution:
        n = obj["size"]
        f = tuple(tuple(int(v) for v in row) for row in obj["f"])
        g = tuple(tuple(int(v) for v in row) for row in obj["g"])
        if len(f) != n or len(g) != n or any(len(r) != n for r in f + g):
            raise ValueError("f and g must be size x size")
        if any(not 0 <= v < n for r in f + g for v in r):
            raise ValueError("entries of f and g must be points of X")
        return cls(n, f, g)


def _as_perms(rows, size=None) -> tuple[Permutation, ...]:
    rows = [list(r) for r in rows]
    n = len(rows) if size is None else int(size)
    if len(rows) != n:
        raise ValueError(f"expected {n} permutations, got {len(rows)}")
    out = []
    for x, r in enumerate(rows):
        if len(r) != n:
            raise ValueError(f"lambda({x}) has degree {len(r)}, expected {n}")
        out.append(Permutation(r))
    return tuple(out)


def iyb_violation(lam) -> Violation | None:
    lam = _as_perms(lam) if not isinstance(lam, IYBMap) else lam.lam
    n = len(lam)
    if n == 0:
        return None
    bad = kernels.iyb_violation(np.array(lam, dtype=np.int64).reshape(n, n))
    if bad is None:
        return None
    x, y = bad
    lhs = lam[x] * lam[lam[x].inverse()[y]]
    rhs = lam[y] * lam[lam[y].inverse()[x]]
    return Violation("IYB identity", (x, y), list(lhs), list(rhs))


def check_iyb_map(candidate, size: int | None = None) -> IYBMap:
    """Verify a candidate map; raises :class:`VerificationError` on the first bad pair."""
    if isinstance(candidate, IYBMap):
        lam = candidate.lam
    else:
        lam = _as_perms(candidate, size)
    v = iyb_violation(lam)
    if v is not None:
        raise VerificationError(v)
    return IYBMap(len(lam), tuple(lam))


# solutions

def solution_from_map(m: IYBMap) -> SetSolution:
    n = m.size
    lam = m.array()
    laminv = np.argsort(lam, axis=1)
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    fxy = lam[x, y]  # lam(x)(y)
    gyx = laminv[fxy, x]  # lam(lam(x)(y))^-1 (x), indexed [x, y]
    f = tuple(tuple(r) for r in lam.tolist())
    g = tuple(tuple(r) for r in gyx.T.tolist())
    return SetSolution(n, f, g)


def _fg_arrays(s: SetSolution) -> tuple[np.ndarray, np.ndarray]:
    n = s.size
    F = np.array(s.f, dtype=np.int64).reshape(n, n)  # F[x, y] = f_x(y)
    G = np.array(s.g, dtype=np.int64).reshape(n, n).T  # G[x, y] = g_y(x)
    return F, G


def solution_violations(s: SetSolution, braid_cap: int = BRAID_POINT_CAP,
                        braid: bool | None = None) -> list[Violation]:
    """Every failed defining property of ``s`` (first witness of each)."""
    n = s.size
    out = []
    if n == 0:
        return out
    F, G = _fg_arrays(s)
    ident = np.arange(n)
    for x in range(n):
        if not np.array_equal(np.sort(F[x]), ident):
            out.append(Violation("left non-degeneracy", (x,), detail=f"f_{x} is not a bijection"))
            break
    for y in range(n):
        if not np.array_equal(np.sort(G[:, y]), ident):
            out.append(Violation("right non-degeneracy", (y,), detail=f"g_{y} is not a bijection"))
            break
    u, v = F, G
    back_x, back_y = F[u, v], G[u, v]
    xs, ys = np.meshgrid(ident, ident, indexing="ij")
    bad = np.argwhere((back_x != xs) | (back_y != ys))
    if bad.size:
        x, y = map(int, bad[0])
        out.append(Violation("involutivity", (x, y), (int(back_x[x, y]), int(back_y[x, y])), (x, y)))
    if braid is None:
        braid = n <= braid_cap
    if braid:
        w = braid_violation(F, G)
        if w is not None:
            out.append(w)
    return out


def braid_violation(F: np.ndarray, G: np.ndarray) -> Violation | None:
    """Check ``r1 r2 r1 == r2 r1 r2`` on all triples, one slab of ``x`` at a time."""
    n = F.shape[0]

    def r1(a, b, c):
        return F[a, b], G[a, b], c

    def r2(a, b, c):
        return a, F[b, c], G[b, c]

    yz = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    for x in range(n):
        a = np.full((n, n), x)
        b, c = yz
        left = r1(*r2(*r1(a, b, c)))
        right = r2(*r1(*r2(a, b, c)))
        diff = (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])
        if diff.any():
            y, z = map(int, np.argwhere(diff)[0])
            return Violation("braid relation", (x, y, z),
                             tuple(int(t[y, z]) for t in left), tuple(int(t[y, z]) for t in right))
    return None


def check_solution(s: SetSolution, braid_cap: int = BRAID_POINT_CAP) -> SetSolution:
    bad = solution_violations(s, braid_cap)
    if bad:
        raise VerificationError(bad[0])
    return s


def map_from_solution(s: SetSolution) -> IYBMap:
    """``lam(x) = f_x``; the solution must pass every defining check first."""
    check_solution(s)
    return check_iyb_map([list(r) for r in s.f])


def t_conjugation_check(s: SetSolution) -> tuple[bool, Permutation | None]:
    """``T(y) = f_y^-1 (y)``; checks ``T^-1 o f_x^-1 o T == g_x`` for all ``x``."""
    n = s.size
    F, G = _fg_arrays(s)
    finv = np.argsort(F, axis=1)
    T = finv[np.arange(n), np.arange(n)]
    if not np.array_equal(np.sort(T), np.arange(n)):
        return False, None
    Tinv = np.argsort(T)
    # (T^-1 f_x^-1 T)(y) = Tinv[finv[x, T[y]]]
    lhs = Tinv[finv[:, T]]
    ok = bool(np.array_equal(lhs, G.T))
    return ok, Permutation(T.tolist(), check=False)


# the extension of lam to the free abelian monoid on X

class ITypeStructure:
    """``lam`` extended to exponent vectors by ``lam(x a) = lam(x) o lam(lam(x)^-1 (a))``.

    ``lam(x)^-1 (a)`` permutes the letters of ``a``.  Every evaluation with
    more than one available first letter is computed along two of them and
    compared, so a non-IYB input is caught rather than silently extended.
    """

    def __init__(self, base: IYBMap, word_cap: int = DEFAULT_WORD_CAP):
        self.base = base
        self.word_cap = word_cap
        self.n = base.size
        self._inv = [p.inverse() for p in base.lam]
        self.memo: dict[tuple[int, ...], Permutation] = {(0,) * self.n: Permutation.identity(self.n)}

    def _strip(self, x: int, word: tuple[int, ...]) -> tuple[int, ...]:
        """``lam(x)^-1`` applied to the letters of ``word`` minus one ``x``."""
        rest = list(word)
        rest[x] -= 1
        pinv = self._inv[x]
        out = [0] * self.n
        for y, e in enumerate(rest):
            if e:
                out[pinv[y]] += e
        return tuple(out)

    def __call__(self, word: Sequence[int]) -> Permutation:
        word = tuple(int(e) for e in word)
        if len(word) != self.n or any(e < 0 for e in word):
            raise ValueError("word must be a non-negative exponent vector over X")
        if sum(word) > self.word_cap:
            raise BudgetExceeded(f"word length {sum(word)} exceeds the cap {self.word_cap}")
        return self._eval(word)

    def _eval(self, word):
        hit = self.memo.get(word)
        if hit is not None:
            return hit
        letters = [x for x, e in enumerate(word) if e]
        values = []
        for x in letters[:2]:
            values.append(self.base.lam[x] * self._eval(self._strip(x, word)))
        if len(values) == 2 and values[0] != values[1]:
            raise VerificationError(Violation(
                "well-definedness of the extension", word, list(values[0]), list(values[1]),
                detail=f"first letters {letters[0]} and {letters[1]} disagree"))
        self.memo[word] = values[0]
        return values[0]

    def act(self, p: Sequence[int], word: tuple[int, ...]) -> tuple[int, ...]:
        """Permute the letters of ``word`` by ``p``."""
        out = [0] * self.n
        for y, e in enumerate(word):
            if e:
                out[p[y]] += e
        return tuple(out)


def extend_lambda(st: ITypeStructure, word: Sequence[int]) -> Permutation:
    return st(word)


def words_up_to(n: int, length: int):
    """All exponent vectors over ``n`` letters of total length ``<= length``."""
    for total in range(length + 1):
        for bars in itertools.combinations(range(total + n - 1), n - 1):
            prev = -1
            word = []
            for b in bars + (total + n - 1,):
                word.append(b - prev - 1)
                prev = b
            yield tuple(word)


def itype_closure_check(st: ITypeStructure, max_len: int) -> bool:
    """Multiplicativity on all word pairs of total length ``<= max_len``, and
    that the values of words generate the same group as ``lam(X)``."""
    if max_len > st.word_cap:
        raise BudgetExceeded(f"max_len {max_len} exceeds the word cap {st.word_cap}")
    n = st.n
    words = list(words_up_to(n, max_len))
    by_len: dict[int, list] = {}
    for w in words:
        by_len.setdefault(sum(w), []).append(w)
    for a in words:
        la = sum(a)
        pa = st._eval(a)
        pa_inv = pa.inverse()
        for lb in range(max_len - la + 1):
            for b in by_len.get(lb, ()):
                ab = tuple(i + j for i, j in zip(a, b))
                if st._eval(ab) != pa * st._eval(st.act(pa_inv, b)):
                    return False
    values = {st._eval(w) for w in words}
    gen = closure(sorted(values), max(n, 1))
    base = st.base.closure()
    return gen.order == base.order and set(map(tuple, gen.perms.tolist())) == set(map(tuple, base.perms.tolist()))


def count_words(n: int, length: int) -> int:
    return comb(n + length, length)


# enumeration

@dataclass
class EnumerationResult:
    n: int
    maps: list[IYBMap]
    complete: bool
    up_to_relabeling: bool
    total_labelled: int
    seconds: float = 0.0
    classes: list[list[int]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.maps)


def _enum_worker(args):
    n, first, max_seconds = args
    perms = np.array(all_permutations(n), dtype=np.int64).reshape(-1, n)
    rows, complete = kernels.enumerate_iyb(perms, first, max_seconds)
    return rows.tolist(), complete


def enumerate_labelled(n: int, workers: int = 1, max_seconds: float = -1.0,
                       allow_large: bool = False) -> tuple[list[IYBMap], bool]:
    """Every IYB map on ``n`` points, lexicographic in ``(lam(0), ..., lam(n-1))``."""
    if n > 5 or (n == 5 and not allow_large):
        raise BudgetExceeded("full enumeration is supported for n <= 4 (n = 5 needs allow_large)")
    if n == 0:
        return [IYBMap(0, ())], True
    perms = all_permutations(n)
    jobs = [(n, p, max_seconds) for p in range(len(perms))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_enum_worker, jobs))
    else:
        parts = [_enum_worker(j) for j in jobs]
    maps = []
    complete = True
    for rows, ok in parts:
        complete &= ok
        for row in rows:
            maps.append(IYBMap(n, tuple(perms[i] for i in row)))
    return maps, complete


def relabeling_classes(maps: Sequence[IYBMap]) -> list[list[int]]:
    """Partition by ``lam ~ lam'`` iff some ``pi`` has ``lam'(pi(x)) = pi lam(x) pi^-1``.

    Classes are listed by their first member; the search conjugates each
    representative by every ``pi`` in ``Sym_X``.
    """
    index = {m.lam: i for i, m in enumerate(maps)}
    seen = [False] * len(maps)
    classes = []
    for i, m in enumerate(maps):
        if seen[i]:
            continue
        cls = []
        for pi in all_permutations(m.size):
            j = index.get(m.relabel(pi).lam)
            if j is not None and not seen[j]:
                seen[j] = True
                cls.append(j)
        classes.append(sorted(cls))
    return classes


def enumerate_iyb_maps(n: int, up_to_relabeling: bool = True, workers: int = 1,
                       max_seconds: float = -1.0, allow_large: bool = False) -> EnumerationResult:
    t0 = time.perf_counter()
    maps, complete = enumerate_labelled(n, workers, max_seconds, allow_large)
    total = len(maps)
    classes: list[list[int]] = []
    if up_to_relabeling:
        classes = relabeling_classes(maps)
        maps = [maps[c[0]] for c in classes]
    return EnumerationResult(n, maps, complete, up_to_relabeling, total,
                             time.perf_counter() - t0, classes)


def disjoint_union(maps: Sequence[IYBMap]) -> IYBMap:
    """Block map: ``lam_i`` on block ``i``, identity on the other blocks."""
    if not maps:
        raise ValueError("need at least one map")
    sizes = [m.size for m in maps]
    lam = []
    for i, m in enumerate(maps):
        for x in range(m.size):
            blocks = [Permutation.identity(s) for s in sizes]
            blocks[i] = m.lam[x]
            lam.append(direct_sum(*blocks))
    return check_iyb_map(lam)
