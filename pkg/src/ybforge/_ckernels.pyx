# cython: language_level=3
"""Compiled versions of the kernels in ``_pykernels``.

Same functions, same arguments, same results (including search order, node
counts and branch indices), so either backend can stand in for the other.
"""
import time

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()

ctypedef long long i64


def iyb_violation(lam):
    cdef i64[:, ::1] L = np.array(lam, dtype=np.int64, order="C")
    cdef Py_ssize_t n = L.shape[0]
    cdef i64[:, ::1] Linv = np.array(np.argsort(np.asarray(L), axis=1), dtype=np.int64, order="C")
    cdef Py_ssize_t x, y, z
    cdef i64 u, v
    for x in range(n):
        for y in range(x + 1, n):
            u = Linv[x, y]
            v = Linv[y, x]
            for z in range(n):
                if L[x, L[u, z]] != L[y, L[v, z]]:
                    return (x, y)
    return None


def associativity_violation(table):
    cdef i64[:, ::1] T = np.array(table, dtype=np.int64, order="C")
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if T[T[a, b], c] != T[a, T[b, c]]:
                    return (a, b, c)
    return None


def _perm_tables(perms):
    perms = np.asarray(perms, dtype=np.int64)
    m = perms.shape[0]
    index = {tuple(p): i for i, p in enumerate(perms.tolist())}
    comp = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        rows = perms[i][perms]
        for j, row in enumerate(rows.tolist()):
            comp[i, j] = index[tuple(row)]
    invapply = np.array(np.argsort(perms, axis=1), dtype=np.int64, order="C")
    return comp, invapply


cdef bint _consistent(i64[:, ::1] comp, i64[:, ::1] invapply, i64* lam, Py_ssize_t k) noexcept:
    cdef Py_ssize_t x, y
    cdef i64 lx, ly, u, v
    for x in range(k + 1):
        lx = lam[x]
        for y in range(x + 1, k + 1):
            ly = lam[y]
            u = invapply[lx, y]
            v = invapply[ly, x]
            if u > k or v > k:
                continue
            if x != k and y != k and u != k and v != k:
                continue
            if comp[lx, lam[u]] != comp[ly, lam[v]]:
                return False
    return True


def enumerate_iyb(perms, first=-1, max_seconds=-1.0):
    perms = np.asarray(perms, dtype=np.int64)
    cdef Py_ssize_t m = perms.shape[0]
    cdef Py_ssize_t n = perms.shape[1] if m else 0
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64), True
    comp_np, inv_np = _perm_tables(perms)
    cdef i64[:, ::1] comp = comp_np
    cdef i64[:, ::1] invapply = inv_np
    deadline = time.monotonic() + max_seconds if max_seconds > 0 else None
    found = []
    cdef i64* lam = <i64*> malloc(n * sizeof(i64))
    cdef i64* pos = <i64*> malloc(n * sizeof(i64))
    cdef Py_ssize_t k = 0
    cdef i64 counter = 0, lo, hi
    cdef bint complete = True
    cdef i64 pin = first
    try:
        pos[0] = pin if pin >= 0 else 0
        while k >= 0:
            hi = (pin + 1) if (k == 0 and pin >= 0) else m
            if pos[k] >= hi:
                k -= 1
                if k >= 0:
                    pos[k] += 1
                continue
            counter += 1
            if deadline is not None and (counter & 1023) == 0 and time.monotonic() > deadline:
                complete = False
                break
            lam[k] = pos[k]
            if not _consistent(comp, invapply, lam, k):
                pos[k] += 1
                continue
            if k + 1 == n:
                found.append([lam[i] for i in range(n)])
                pos[k] += 1
            else:
                k += 1
                pos[k] = 0
    finally:
        free(lam)
        free(pos)
    rows = np.array(found, dtype=np.int64).reshape(len(found), n)
    return rows, complete


def extend_hom(tab_g, tab_h, gens, imgs):
    cdef i64[:, ::1] G = np.array(tab_g, dtype=np.int64, order="C")
    cdef i64[:, ::1] H = np.array(tab_h, dtype=np.int64, order="C")
    cdef i64[::1] S = np.array(gens, dtype=np.int64, order="C")
    cdef i64[::1] I = np.array(imgs, dtype=np.int64, order="C")
    cdef Py_ssize_t n = G.shape[0], nh = H.shape[0], ng = S.shape[0]
    phi_np = np.full(n, -1, dtype=np.int64)
    used_np = np.zeros(nh, dtype=np.uint8)
    queue_np = np.empty(n, dtype=np.int64)
    cdef i64[::1] phi = phi_np
    cdef cnp.uint8_t[::1] used = used_np
    cdef i64[::1] queue = queue_np
    cdef Py_ssize_t head = 0, tail = 1, i
    cdef i64 x, px, y, val
    phi[0] = 0
    used[0] = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        px = phi[x]
        for i in range(ng):
            y = G[x, S[i]]
            val = H[px, I[i]]
            if phi[y] < 0:
                if used[val]:
                    return None
                phi[y] = val
                used[val] = 1
                queue[tail] = y
                tail += 1
            elif phi[y] != val:
                return None
    return phi_np


cdef class _LiftState:
    cdef Py_ssize_t n, q, ngens, cells
    cdef i64[:, ::1] table
    cdef i64[::1] inv, coset_of, qinv, cos_start, cos_elems, users_start, users_xb, users_yb, gens
    cdef i64[:, ::1] qtab, allowed, rho
    cdef i64[::1] val, rinv, trail, queue
    cdef cnp.uint8_t[::1] is_gen
    cdef Py_ssize_t ntrail, nqueue

    def __init__(self, table, inv, coset_of, qtab, qinv, cosets, mubar, gens):
        self.table = np.array(table, dtype=np.int64, order="C")
        self.inv = np.array(inv, dtype=np.int64, order="C")
        self.coset_of = np.array(coset_of, dtype=np.int64, order="C")
        self.qtab = np.array(qtab, dtype=np.int64, order="C")
        self.qinv = np.array(qinv, dtype=np.int64, order="C")
        self.allowed = np.array(mubar, dtype=np.int64, order="C")
        n = self.table.shape[0]
        q = self.qtab.shape[0]
        self.n, self.q = n, q
        self.cells = n * q
        starts = [0]
        elems = []
        for c in cosets:
            elems.extend(int(e) for e in c)
            starts.append(len(elems))
        self.cos_start = np.array(starts, dtype=np.int64)
        self.cos_elems = np.array(elems, dtype=np.int64)
        mb = np.asarray(mubar, dtype=np.int64)
        mubar_inv = np.argsort(mb, axis=1)
        qi = np.asarray(qinv, dtype=np.int64)
        rho = np.empty((q, q), dtype=np.int64)
        for xb in range(q):
            for yb in range(q):
                rho[xb, yb] = qi[mubar_inv[yb, qi[xb]]]
        self.rho = rho
        users = [[] for _ in range(q)]
        for xb in range(q):
            for yb in range(q):
                users[rho[xb, yb]].append((xb, yb))
        ustart = [0]
        uxb, uyb = [], []
        for lst in users:
            for xb, yb in lst:
                uxb.append(xb)
                uyb.append(yb)
            ustart.append(len(uxb))
        self.users_start = np.array(ustart, dtype=np.int64)
        self.users_xb = np.array(uxb, dtype=np.int64)
        self.users_yb = np.array(uyb, dtype=np.int64)
        g = list(dict.fromkeys(int(s) for s in gens))
        self.gens = np.array(g, dtype=np.int64)
        self.ngens = len(g)
        isg = np.zeros(n, dtype=np.uint8)
        for s in g:
            isg[s] = 1
        self.is_gen = isg
        self.val = np.full(q * n, -1, dtype=np.int64)
        self.rinv = np.full(q * n, -1, dtype=np.int64)
        self.trail = np.empty(q * n + 1, dtype=np.int64)
        self.queue = np.empty(q * n + 1, dtype=np.int64)
        self.ntrail = 0
        self.nqueue = 0

    cdef inline bint assign(self, i64 c, i64 y, i64 v) noexcept:
        cdef i64 n = self.n
        cdef i64 idx = c * n + y
        cdef i64 cur = self.val[idx]
        if cur >= 0:
            return cur == v
        if self.coset_of[v] != self.allowed[c, self.coset_of[y]]:
            return False
        if self.rinv[c * n + v] >= 0:
            return False
        self.val[idx] = v
        self.rinv[c * n + v] = y
        self.trail[self.ntrail] = idx
        self.ntrail += 1
        self.queue[self.nqueue] = idx
        self.nqueue += 1
        return True

    cdef void undo(self, Py_ssize_t mark) noexcept:
        cdef i64 idx, c
        cdef i64 n = self.n
        while self.ntrail > mark:
            self.ntrail -= 1
            idx = self.trail[self.ntrail]
            c = idx // n
            self.rinv[c * n + self.val[idx]] = -1
            self.val[idx] = -1
        self.nqueue = 0

    cdef bint propagate(self) noexcept:
        cdef i64 n = self.n, q = self.q
        cdef i64 idx, c, y, v, c1, c2, cc, a, b, y2, y3, z, z2, yi, cy, x, xi
        cdef i64 s, third, ys, t, w, y0, r0, u, t0, vi, xb, yb, y1, y1s, base, rc
        cdef Py_ssize_t k, j, e
        while self.nqueue > 0:
            self.nqueue -= 1
            idx = self.queue[self.nqueue]
            c = idx // n
            y = idx % n
            v = self.val[idx]
            for c1 in range(q):
                a = self.qtab[c1, c] * n + y
                b = c1 * n + v
                if self.val[a] >= 0:
                    if not self.assign(c1, v, self.val[a]):
                        return False
                elif self.val[b] >= 0:
                    if not self.assign(self.qtab[c1, c], y, self.val[b]):
                        return False
            for c2 in range(q):
                cc = self.qtab[c, c2]
                y2 = self.rinv[c2 * n + y]
                if y2 >= 0 and not self.assign(cc, y2, v):
                    return False
                y3 = self.rinv[cc * n + v]
                if y3 >= 0 and not self.assign(c2, y3, y):
                    return False
            for c2 in range(q):
                c1 = self.qtab[c, self.qinv[c2]]
                z = self.val[c2 * n + y]
                if z >= 0:
                    if not self.assign(c1, z, v):
                        return False
                else:
                    z2 = self.rinv[c1 * n + v]
                    if z2 >= 0 and not self.assign(c2, y, z2):
                        return False
            yi = self.inv[y]
            cy = self.coset_of[yi]
            for e in range(self.cos_start[c], self.cos_start[c + 1]):
                x = self.cos_elems[e]
                xi = self.inv[x]
                if not self.assign(cy, xi, self.table[yi, self.table[xi, v]]):
                    return False
            for k in range(self.ngens):
                s = self.gens[k]
                rc = self.rho[c, self.coset_of[y]]
                third = rc * n + s
                ys = self.table[y, s]
                t = self.val[third]
                if t >= 0:
                    if not self.assign(c, ys, self.table[v, t]):
                        return False
                else:
                    w = self.val[c * n + ys]
                    if w >= 0 and not self.assign(rc, s, self.table[self.inv[v], w]):
                        return False
                y0 = self.table[y, self.inv[s]]
                r0 = self.rho[c, self.coset_of[y0]]
                u = self.val[c * n + y0]
                if u >= 0:
                    if not self.assign(r0, s, self.table[self.inv[u], v]):
                        return False
                else:
                    t0 = self.val[r0 * n + s]
                    if t0 >= 0 and not self.assign(c, y0, self.table[v, self.inv[t0]]):
                        return False
            if self.is_gen[y]:
                s = y
                vi = self.inv[v]
                for j in range(self.users_start[c], self.users_start[c + 1]):
                    xb = self.users_xb[j]
                    yb = self.users_yb[j]
                    base = xb * n
                    for e in range(self.cos_start[yb], self.cos_start[yb + 1]):
                        y1 = self.cos_elems[e]
                        y1s = self.table[y1, s]
                        u = self.val[base + y1]
                        if u >= 0:
                            if not self.assign(xb, y1s, self.table[u, v]):
                                return False
                        else:
                            w = self.val[base + y1s]
                            if w >= 0 and not self.assign(xb, y1, self.table[w, vi]):
                                return False
        return True

    cdef list candidates(self, i64 cell):
        cdef i64 n = self.n
        cdef i64 c = cell // n, y = cell % n
        cdef i64 target = self.allowed[c, self.coset_of[y]]
        cdef Py_ssize_t e
        cdef list out = []
        for e in range(self.cos_start[target], self.cos_start[target + 1]):
            if self.rinv[c * n + self.cos_elems[e]] < 0:
                out.append(self.cos_elems[e])
        return out

    def seed(self):
        cdef i64 n = self.n, q = self.q, y, c, r, k
        cdef Py_ssize_t e
        cdef bint ok = True
        for y in range(n):
            ok = ok and self.assign(0, y, y)
        for c in range(q):
            r = self.cos_elems[self.cos_start[c]]
            for e in range(self.cos_start[0], self.cos_start[1]):
                k = self.cos_elems[e]
                ok = ok and self.assign(c, k, self.table[self.table[r, k], self.inv[r]])
        return ok and self.propagate()

    def solution(self):
        return np.array(self.val, dtype=np.int64).reshape(self.q, self.n)

    def run(self, list choices, i64 max_nodes):
        cdef i64 n = self.n, q = self.q
        cdef Py_ssize_t nchoices = len(choices)
        cdef i64 scan = 0, nodes = 0
        cdef Py_ssize_t level, nlevel
        cdef i64 cell, ncell
        solutions = []
        branched = []

        def next_cell(Py_ssize_t lev):
            nonlocal scan
            while lev < nchoices:
                if self.val[choices[lev]] < 0:
                    return lev, choices[lev]
                lev += 1
            while scan < q * n and self.val[scan] >= 0:
                scan += 1
            return lev, (scan if scan < q * n else -1)

        level, cell = next_cell(0)
        if cell < 0:
            solutions.append(self.solution())
            return solutions, branched, nodes, True
        if level < nchoices and level not in branched:
            branched.append(level)
        stack = [[level, cell, self.candidates(cell), 0, self.ntrail, scan]]
        cdef list frame, options
        cdef Py_ssize_t pos
        while stack:
            frame = stack[len(stack) - 1]
            level = frame[0]
            cell = frame[1]
            options = frame[2]
            pos = frame[3]
            self.undo(frame[4])
            scan = frame[5]
            if pos >= len(options):
                stack.pop()
                continue
            frame[3] = pos + 1
            if 0 <= max_nodes <= nodes:
                return solutions, branched, nodes, False
            nodes += 1
            if not (self.assign(cell // n, cell % n, options[pos]) and self.propagate()):
                continue
            nlevel, ncell = next_cell(level + 1 if level < nchoices else level)
            if ncell < 0:
                solutions.append(self.solution())
                continue
            if nlevel < nchoices and nlevel not in branched:
                branched.append(nlevel)
            stack.append([nlevel, ncell, self.candidates(ncell), 0, self.ntrail, scan])
        return solutions, branched, nodes, True


def lift_search(table, inv, coset_of, qtab, qinv, cosets, mubar, gens, max_nodes=-1):
    cdef _LiftState st = _LiftState(table, inv, coset_of, qtab, qinv, cosets, mubar, gens)
    if not st.seed():
        return [], [], 0, True
    coset_arr = np.asarray(coset_of, dtype=np.int64)
    g = list(dict.fromkeys(int(s) for s in gens))
    choices = []
    for h in g:
        for s in g:
            cell = int(coset_arr[s]) * st.n + h
            if cell not in choices:
                choices.append(cell)
    return st.run(choices, max_nodes)
