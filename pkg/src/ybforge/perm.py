"""Permutations of ``{0, ..., n-1}`` stored as image tuples.

Composition is apply-right-first: ``(p * q)(x) == p(q(x))``.  Every formula
elsewhere in the package (``lam[x] * lam[lam[x].inverse()(y)]`` and so on) is
written under this convention.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence


class Permutation(tuple):
    """A bijection of ``range(degree)``, as the tuple of its images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = (), *, check: bool = True):
        self = super().__new__(cls, (int(i) for i in images))
        if check:
            n = len(self)
            if sorted(self) != list(range(n)):
                raise ValueError(f"not a permutation of range({n}): {tuple(self)}")
        return self

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for k, point in enumerate(cyc):
                if point in seen:
                    raise ValueError(f"point {point} appears in two cycles")
                seen.add(point)
                images[point] = cyc[(k + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other: Permutation) -> Permutation:  # type: ignore[override]
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        result = Permutation.identity(len(self))
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v] = i
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def order(self) -> int:
        from math import lcm

        result = 1
        for cyc in self.cycles():
            result = lcm(result, len(cyc))
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def conjugate(self, pi: Permutation) -> Permutation:
        """``pi * self * pi^-1``: the permutation with points renamed by ``pi``."""
        images = [0] * len(self)
        for x, y in enumerate(self):
            images[pi[x]] = pi[y]
        return Permutation(images, check=False)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation.identity({len(self)})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"Permutation<{len(self)}>{body}"

    def to_json(self) -> dict:
        return {"degree": len(self), "images": list(self)}

    @classmethod
    def from_json(cls, obj: dict) -> Permutation:
        images = obj["images"]
        if obj.get("degree", len(images)) != len(images):
            raise ValueError("degree does not match the length of images")
        return cls(images)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """Return ``p o q``, i.e. ``x -> p[q[x]]``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Permutation((p[i] for i in q), check=False)


def all_permutations(n: int) -> list[Permutation]:
    """All of ``Sym_n`` in lexicographic order of image tuples."""
    return [Permutation(p, check=False) for p in itertools.permutations(range(n))]


def direct_sum(*perms: Sequence[int]) -> Permutation:
    """Block permutation acting on consecutive, disjoint index ranges."""
    images: list[int] = []
    offset = 0
    for p in perms:
        images.extend(offset + v for v in p)
        offset += len(p)
    return Permutation(images, check=False)
