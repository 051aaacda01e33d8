"""Doubling an IYB map on ``X`` to one on ``X x X`` with the same group.

Pairs ``(x, y)`` are indexed row-major: ``x * n + y``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, VerificationError, Violation
from .groups import DEFAULT_ISO_CAP, FiniteGroup, closure, fingerprint, isomorphic
from .perm import Permutation
from .ybe import IYBMap, check_iyb_map

DEFAULT_POINT_CAP = 4096


def psi(m: IYBMap, tau: Sequence[int]) -> Permutation:
    """``psi(tau)(x, y) = (tau(x), lam(tau(x))^-1 tau lam(x) (y))``."""
    n = m.size
    tau = np.asarray(tau, dtype=np.int64)
    if tau.shape != (n,):
        raise ValueError(f"tau has degree {tau.shape[0]}, expected {n}")
    lam = m.array()
    laminv = np.argsort(lam, axis=1)
    tx = tau  # tx[x] = tau(x)
    # second[x, y] = laminv[tau(x)][tau[lam[x][y]]]
    second = np.take_along_axis(laminv[tx], tau[lam], axis=1)
    images = tx[:, None] * n + second
    return Permutation(images.reshape(-1).tolist(), check=False)


def psi_violation(m: IYBMap, group: FiniteGroup) -> Violation | None:
    """Check that ``psi`` is an injective homomorphism on a permutation group."""
    perms = group.perms
    table = np.array([psi(m, p) for p in perms.tolist()], dtype=np.int64)
    if len({tuple(r) for r in table.tolist()}) != group.order:
        return Violation("psi injective", (), detail="two permutations share an image")
    for s in range(group.order):
        lhs = table[group.table[s]]  # psi(s t) for every t
        rhs = table[s][table]  # psi(s) o psi(t)
        bad = np.nonzero((lhs != rhs).any(axis=1))[0]
        if bad.size:
            return Violation("psi homomorphism", (s, int(bad[0])))
    return None


@dataclass
class AmplifiedMap:
    base: IYBMap
    result: IYBMap
    psi_table: dict[tuple[int, ...], tuple[int, ...]]
    base_closure: FiniteGroup | None = None
    result_closure: FiniteGroup | None = None
    isomorphic: bool | None = None
    notes: list[str] = field(default_factory=list)


def lambda2(m: IYBMap, check_psi: bool = True, compare_closures: bool = True,
            iso_cap: int = DEFAULT_ISO_CAP) -> AmplifiedMap:
    """``lam2(x, y) = psi(lam(x) lam(y))``, verified as an IYB map.

    ``psi`` is tabulated on the group generated by the products
    ``lam(x) lam(y)``.  When the identity lies in ``lam(X)`` the closures of
    ``lam(X)`` and ``lam2(X^2)`` are compared with the isomorphism search; if
    they exceed ``iso_cap`` only fingerprints are compared and a note says so.
    """
    n = m.size
    products = {tuple(m.lam[x] * m.lam[y]) for x in range(n) for y in range(n)}
    mu_group = closure(sorted(products), max(n, 1))
    if check_psi:
        v = psi_violation(m, mu_group)
        if v is not None:
            raise VerificationError(v)
    table = {tuple(p): tuple(psi(m, p)) for p in mu_group.perms.tolist()}
    lam2 = [table[tuple(m.lam[x] * m.lam[y])] for x in range(n) for y in range(n)]
    result = check_iyb_map(lam2)
    out = AmplifiedMap(m, result, table)
    if compare_closures:
        out.base_closure = m.closure()
        out.result_closure = result.closure()
        if m.image_contains_identity():
            iso = isomorphic(out.base_closure, out.result_closure, cap=iso_cap)
            if iso is None:
                same = fingerprint(out.base_closure) == fingerprint(out.result_closure)
                out.notes.append("not proven isomorphic: above the isomorphism cap; "
                                 f"fingerprints {'agree' if same else 'differ'}")
                if not same:
                    raise VerificationError(Violation("closure fingerprints", (),
                                                      fingerprint(out.base_closure),
                                                      fingerprint(out.result_closure)))
            elif not iso:
                raise VerificationError(Violation("closure isomorphism", (),
                                                  out.base_closure.order, out.result_closure.order))
            out.isomorphic = iso
        else:
            out.notes.append("identity not in lam(X): closures reported, no relation asserted")
    return out


@dataclass
class IterationResult:
    maps: list[IYBMap]
    complete: bool
    stages: list[AmplifiedMap]
    notes: list[str] = field(default_factory=list)


def iterate_lambda2(m: IYBMap, k: int, cap_points: int = DEFAULT_POINT_CAP,
                    iso_cap: int = DEFAULT_ISO_CAP) -> IterationResult:
    """Apply :func:`lambda2` ``k`` times; stops early (flagged) at the point cap."""
    maps = [m]
    stages = []
    notes = []
    complete = True
    for _ in range(k):
        cur = maps[-1]
        if cur.size ** 2 > cap_points:
            complete = False
            notes.append(f"stopped: next stage has {cur.size ** 2} points, cap is {cap_points}")
            break
        amp = lambda2(cur, iso_cap=iso_cap)
        stages.append(amp)
        maps.append(amp.result)
    return IterationResult(maps, complete, stages, notes)


def require_within_cap(m: IYBMap, k: int, cap_points: int = DEFAULT_POINT_CAP) -> None:
    size = m.size
    for _ in range(k):
        size *= size
        if size > cap_points:
            raise BudgetExceeded(f"stage with {size} points exceeds the cap {cap_points}")
