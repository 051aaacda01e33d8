"""Pure-Python/numpy implementations of the hot kernels.

``_ckernels.pyx`` implements the same functions with the same signatures and
results; ``ybforge.kernels`` picks one at import.  Inputs are numpy integer
arrays, already validated by the caller.
"""
from __future__ import annotations

import time

import numpy as np


def iyb_violation(lam):
    """First pair ``x < y`` breaking the IYB identity, or ``None``.

    ``lam`` is an ``(n, n)`` array whose row ``x`` holds the images of
    ``lambda(x)``.
    """
    lam = np.asarray(lam, dtype=np.int64)
    n = lam.shape[0]
    laminv = np.argsort(lam, axis=1)
    for x in range(n):
        u = laminv[x]  # u[y] = lam(x)^-1 (y)
        lhs = lam[x][lam[u]]  # lhs[y] = lam(x) o lam(u[y])
        v = laminv[:, x]  # v[y] = lam(y)^-1 (x)
        rhs = np.take_along_axis(lam, lam[v], axis=1)  # rhs[y] = lam(y) o lam(v[y])
        bad = np.nonzero((lhs[x + 1:] != rhs[x + 1:]).any(axis=1))[0]
        if bad.size:
            return (x, int(bad[0]) + x + 1)
    return None


def associativity_violation(table):
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    for a in range(n):
        left = table[table[a]]  # left[b, c] = (ab)c
        right = table[a][table]  # right[b, c] = a(bc)
        bad = np.argwhere(left != right)
        if bad.size:
            return (a, int(bad[0, 0]), int(bad[0, 1]))
    return None


def _perm_tables(perms):
    perms = np.asarray(perms, dtype=np.int64)
    m, n = perms.shape
    index = {tuple(p): i for i, p in enumerate(perms.tolist())}
    comp = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        rows = perms[i][perms]  # rows[j] = perms[i] o perms[j]
        for j, row in enumerate(rows.tolist()):
            comp[i, j] = index[tuple(row)]
    invapply = np.argsort(perms, axis=1)
    return comp, invapply


def enumerate_iyb(perms, first=-1, max_seconds=-1.0):
    """Backtracking search over ``(lam(0), ..., lam(n-1))``.

    ``perms`` is ``(m, n)``: the candidate permutations in the order they are
    tried.  An instance of the identity is checked as soon as all four values
    it involves are assigned.  ``first >= 0`` pins ``lam(0)``.  Returns
    ``(rows, complete)`` where ``rows`` is a ``(k, n)`` array of indices into
    ``perms``.
    """
    comp, invapply = _perm_tables(perms)
    comp = comp.tolist()
    invapply = invapply.tolist()
    m = len(comp)
    n = len(invapply[0]) if m else 0
    deadline = time.monotonic() + max_seconds if max_seconds > 0 else None
    found: list[list[int]] = []
    lam = [0] * n
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64), True

    def consistent(k):
        # pairs whose four points are all <= k and which involve k
        for x in range(k + 1):
            lx = lam[x]
            for y in range(x + 1, k + 1):
                ly = lam[y]
                u = invapply[lx][y]
                v = invapply[ly][x]
                if u > k or v > k:
                    continue
                if x != k and y != k and u != k and v != k:
                    continue
                if comp[lx][lam[u]] != comp[ly][lam[v]]:
                    return False
        return True

    complete = True
    counter = 0

    def search(k):
        nonlocal complete, counter
        options = range(m) if not (k == 0 and first >= 0) else (first,)
        for p in options:
            counter += 1
            if deadline is not None and (counter & 1023) == 0 and time.monotonic() > deadline:
                complete = False
                return False
            lam[k] = p
            if not consistent(k):
                continue
            if k + 1 == n:
                found.append(list(lam))
            elif not search(k + 1):
                return False
        return True

    search(0)
    rows = np.array(found, dtype=np.int64).reshape(len(found), n)
    return rows, complete


def extend_hom(tab_g, tab_h, gens, imgs):
    """Extend ``gens[i] -> imgs[i]`` along right multiplication.

    Returns an array ``phi`` with ``-1`` outside the subgroup generated by
    ``gens``, or ``None`` if the extension is inconsistent or not injective.
    """
    tab_g = np.asarray(tab_g).tolist()
    tab_h = np.asarray(tab_h).tolist()
    n = len(tab_g)
    phi = [-1] * n
    used = [False] * len(tab_h)
    phi[0] = 0
    used[0] = True
    queue = [0]
    head = 0
    pairs = list(zip([int(g) for g in gens], [int(h) for h in imgs]))
    while head < len(queue):
        x = queue[head]
        head += 1
        px = phi[x]
        for s, t in pairs:
            y = tab_g[x][s]
            val = tab_h[px][t]
            if phi[y] < 0:
                if used[val]:
                    return None
                phi[y] = val
                used[val] = True
                queue.append(y)
            elif phi[y] != val:
                return None
    return np.array(phi, dtype=np.int64)


class _LiftState:
    """Partial table ``T[c][y] = mu(x)(y)`` for ``x`` in coset ``c``."""

    def __init__(self, table, inv, coset_of, qtab, qinv, cosets, mubar, gens):
        self.table = table
        self.inv = inv
        self.coset_of = coset_of
        self.qtab = qtab
        self.qinv = qinv
        self.cosets = cosets
        self.n = n = len(table)
        self.q = q = len(qtab)
        self.allowed = mubar
        mubar_inv = [[0] * q for _ in range(q)]
        for c in range(q):
            for z in range(q):
                mubar_inv[c][mubar[c][z]] = z
        # row of mu(mu(y)^-1 (x^-1))^-1 in the two-variable rule, by cosets of x, y
        self.rho = [[qinv[mubar_inv[yb][qinv[xb]]] for yb in range(q)] for xb in range(q)]
        self.rho_users = [[] for _ in range(q)]
        for xb in range(q):
            for yb in range(q):
                self.rho_users[self.rho[xb][yb]].append((xb, yb))
        self.gens = list(dict.fromkeys(gens))
        self.is_gen = [False] * n
        for s in self.gens:
            self.is_gen[s] = True
        self.val = [-1] * (q * n)
        self.rinv = [-1] * (q * n)
        self.trail: list[int] = []
        self.queue: list[int] = []

    def assign(self, c, y, v):
        n = self.n
        idx = c * n + y
        cur = self.val[idx]
        if cur >= 0:
            return cur == v
        if self.coset_of[v] != self.allowed[c][self.coset_of[y]]:
            return False
        if self.rinv[c * n + v] >= 0:
            return False
        self.val[idx] = v
        self.rinv[c * n + v] = y
        self.trail.append(idx)
        self.queue.append(idx)
        return True

    def undo(self, mark):
        n = self.n
        val, rinv, trail = self.val, self.rinv, self.trail
        while len(trail) > mark:
            idx = trail.pop()
            c = idx // n
            rinv[c * n + val[idx]] = -1
            val[idx] = -1
        self.queue.clear()

    def propagate(self):
        n, q = self.n, self.q
        table, inv, coset_of = self.table, self.inv, self.coset_of
        qtab, qinv = self.qtab, self.qinv
        val, rinv = self.val, self.rinv
        assign = self.assign
        queue = self.queue
        while queue:
            idx = queue.pop()
            c, y = divmod(idx, n)
            v = val[idx]
            # homomorphism: T[c1 c2][y] = T[c1][T[c2][y]], this cell in each role
            for c1 in range(q):
                a = qtab[c1][c] * n + y
                b = c1 * n + v
                if val[a] >= 0:
                    if not assign(c1, v, val[a]):
                        return False
                elif val[b] >= 0:
                    if not assign(qtab[c1][c], y, val[b]):
                        return False
            for c2 in range(q):
                cc = qtab[c][c2]
                y2 = rinv[c2 * n + y]
                if y2 >= 0 and not assign(cc, y2, v):
                    return False
                y3 = rinv[cc * n + v]
                if y3 >= 0 and not assign(c2, y3, y):
                    return False
            for c2 in range(q):
                c1 = qtab[c][qinv[c2]]
                z = val[c2 * n + y]
                if z >= 0:
                    if not assign(c1, z, v):
                        return False
                else:
                    z2 = rinv[c1 * n + v]
                    if z2 >= 0 and not assign(c2, y, z2):
                        return False
            # IYB identity: T[x][y] = x y T[y^-1][x^-1] for every x in coset c
            yi = inv[y]
            cy = coset_of[yi]
            for x in self.cosets[c]:
                xi = inv[x]
                if not assign(cy, xi, table[yi][table[xi][v]]):
                    return False
            # two-variable rule: T[x][y s] = T[x][y] T[rho(x, y)][s]
            rho_c = self.rho[c]
            for s in self.gens:
                third = rho_c[coset_of[y]] * n + s
                ys = table[y][s]
                t = val[third]
                if t >= 0:
                    if not assign(c, ys, table[v][t]):
                        return False
                else:
                    w = val[c * n + ys]
                    if w >= 0 and not assign(rho_c[coset_of[y]], s, table[inv[v]][w]):
                        return False
                y0 = table[y][inv[s]]
                r0 = rho_c[coset_of[y0]]
                u = val[c * n + y0]
                if u >= 0:
                    if not assign(r0, s, table[inv[u]][v]):
                        return False
                else:
                    t0 = val[r0 * n + s]
                    if t0 >= 0 and not assign(c, y0, table[v][inv[t0]]):
                        return False
            if self.is_gen[y]:
                s = y
                vi = inv[v]
                for xb, yb in self.rho_users[c]:
                    base = xb * n
                    for y1 in self.cosets[yb]:
                        y1s = table[y1][s]
                        u = val[base + y1]
                        if u >= 0:
                            if not assign(xb, y1s, table[u][v]):
                                return False
                        else:
                            w = val[base + y1s]
                            if w >= 0 and not assign(xb, y1, table[w][vi]):
                                return False
        return True


def lift_search(table, inv, coset_of, qtab, qinv, cosets, mubar, gens, max_nodes=-1):
    """Exhaustive search for liftings of a quotient IYB morphism.

    Cells are ``T[c][y]`` (``c`` a coset of the normal subgroup, ``y`` in G).
    Returns ``(solutions, branch_choices, nodes, exhaustive)``: complete tables
    as ``(q, n)`` arrays, indices into the generator-pair choice list where
    the search had to branch, the number of trial assignments, and whether
    the search ran to completion.
    """
    table = np.asarray(table).tolist()
    inv = np.asarray(inv).tolist()
    coset_of = np.asarray(coset_of).tolist()
    qtab = np.asarray(qtab).tolist()
    qinv = np.asarray(qinv).tolist()
    cosets = [list(map(int, c)) for c in cosets]
    mubar = np.asarray(mubar).tolist()
    gens = [int(g) for g in gens]
    st = _LiftState(table, inv, coset_of, qtab, qinv, cosets, mubar, gens)
    n, q = st.n, st.q

    seeds_ok = True
    for y in range(n):
        seeds_ok = seeds_ok and st.assign(0, y, y)
    for c in range(q):
        r = cosets[c][0]
        for k in cosets[0]:
            seeds_ok = seeds_ok and st.assign(c, k, table[table[r][k]][inv[r]])
    if not seeds_ok or not st.propagate():
        return [], [], 0, True

    choices = []
    for h in st.gens:
        for g in st.gens:
            cell = coset_of[g] * n + h
            if cell not in choices:
                choices.append(cell)

    solutions = []
    branched: list[int] = []
    nodes = 0
    scan = 0  # cells before this index are known on the current path

    def next_cell(level):
        nonlocal scan
        while level < len(choices):
            if st.val[choices[level]] < 0:
                return level, choices[level]
            level += 1
        while scan < q * n and st.val[scan] >= 0:
            scan += 1
        return level, (scan if scan < q * n else -1)

    def candidates(cell):
        c, y = divmod(cell, n)
        target = st.allowed[c][coset_of[y]]
        return [v for v in cosets[target] if st.rinv[c * n + v] < 0]

    # explicit stack: (level, cell, options, position, trail mark, scan mark)
    stack = []
    level, cell = next_cell(0)
    if cell < 0:
        solutions.append(np.array(st.val, dtype=np.int64).reshape(q, n))
        return solutions, branched, nodes, True
    if level < len(choices) and level not in branched:
        branched.append(level)
    stack.append([level, cell, candidates(cell), 0, len(st.trail), scan])
    while stack:
        frame = stack[-1]
        level, cell, options, pos, mark, scan_mark = frame
        st.undo(mark)
        scan = scan_mark
        if pos >= len(options):
            stack.pop()
            continue
        frame[3] = pos + 1
        if 0 <= max_nodes <= nodes:
            return solutions, branched, nodes, False
        nodes += 1
        c, y = divmod(cell, n)
        if not (st.assign(c, y, options[pos]) and st.propagate()):
            continue
        nlevel, ncell = next_cell(level + 1 if level < len(choices) else level)
        if ncell < 0:
            solutions.append(np.array(st.val, dtype=np.int64).reshape(q, n))
            continue
        if nlevel < len(choices) and nlevel not in branched:
            branched.append(nlevel)
        stack.append([nlevel, ncell, candidates(ncell), 0, len(st.trail), scan])
    return solutions, branched, nodes, True
