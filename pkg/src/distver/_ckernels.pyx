# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_pykernels`` for the reference)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef long long i64


def rref_inplace(i64[:, ::1] M, const i64[:, ::1] add, const i64[:, ::1] mul,
                 const i64[::1] inv, const i64[::1] neg, Py_ssize_t pivot_cols=-1):
    cdef Py_ssize_t nrows = M.shape[0], ncols = M.shape[1]
    cdef Py_ssize_t limit = ncols if pivot_cols < 0 else min(pivot_cols, ncols)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 a, f, tmp
    pivots = []
    for c in range(limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = tmp
        a = M[r, c]
        if a != 1:
            a = inv[a]
            for j in range(ncols):
                M[r, j] = mul[a, M[r, j]]
        for i in range(nrows):
            if i == r or M[i, c] == 0:
                continue
            f = neg[M[i, c]]
            for j in range(ncols):
                if M[r, j] != 0:
                    M[i, j] = add[M[i, j], mul[f, M[r, j]]]
        pivots.append(c)
        r += 1
    return pivots


def span_scan(const i64[:, ::1] G, const i64[:, ::1] add, const i64[:, ::1] mul,
              i64 q, Py_ssize_t u, Py_ssize_t nblocks, Py_ssize_t kc, i64 wmax,
              const i64[::1] offset):
    cdef Py_ssize_t k = G.shape[0], N = G.shape[1]
    cdef Py_ssize_t i, j, b, lvl
    cdef i64 w, best = -1, count = 0, nz_hi = 0
    cdef bint live, any_nz
    partial_np = np.zeros((k + 1, N), dtype=np.int64)
    cdef i64[:, ::1] partial = partial_np
    digits_np = np.zeros(k, dtype=np.int64)
    cdef i64[::1] digits = digits_np
    cap = 64
    out_np = np.zeros((cap, N), dtype=np.int64)
    live_np = np.zeros(cap, dtype=np.uint8)
    cdef i64[:, ::1] out = out_np
    cdef unsigned char[::1] out_live = live_np
    cdef Py_ssize_t nout = 0

    for lvl in range(k + 1):
        for j in range(N):
            partial[lvl, j] = offset[j]

    while True:
        count += 1
        w = 0
        for b in range(nblocks):
            for j in range(b * u, b * u + u):
                if partial[0, j] != 0:
                    w += 1
                    break
        live = kc < 0 or nz_hi > 0
        if w > 0:
            if live and (best < 0 or w < best):
                best = w
            if w <= wmax:
                if nout == cap:
                    cap *= 2
                    out_np = np.resize(out_np, (cap, N))
                    live_np = np.resize(live_np, cap)
                    out = out_np
                    out_live = live_np
                for j in range(N):
                    out[nout, j] = partial[0, j]
                out_live[nout] = 1 if live else 0
                nout += 1
        # odometer increment
        lvl = 0
        while lvl < k and digits[lvl] == q - 1:
            digits[lvl] = 0
            if kc >= 0 and lvl >= kc:
                nz_hi -= 1
            lvl += 1
        if lvl == k:
            break
        if digits[lvl] == 0 and kc >= 0 and lvl >= kc:
            nz_hi += 1
        digits[lvl] += 1
        for j in range(N):
            partial[lvl, j] = add[partial[lvl + 1, j], mul[digits[lvl], G[lvl, j]]]
        for i in range(lvl - 1, -1, -1):
            for j in range(N):
                partial[i, j] = partial[lvl, j]
    vectors = np.asarray(out_np[:nout]).copy()
    live_flags = np.asarray(live_np[:nout]).astype(bool)
    return int(best), vectors, live_flags, int(count)


cdef class _ClusterSearch:
    cdef const i64[:, :, ::1] contrib
    cdef const i64[:, ::1] add
    cdef const i64[::1] neg
    cdef const i64[::1] supp_ptr
    cdef const i64[::1] supp_idx
    cdef const i64[:, :, :, ::1] pre
    cdef const i64[:, :, ::1] npre
    cdef const i64[::1] ai_start
    cdef const i64[::1] ai_end
    cdef const i64[:, ::1] ai_vals
    cdef i64 vmax, j0, wmax, n, r, q, nodes
    cdef i64[::1] cur
    cdef i64[:, ::1] sig
    cdef i64[:, ::1] avail
    cdef i64[:, ::1] chosen
    cdef list out

    def __init__(self, contrib, add, neg, supp_ptr, supp_idx, pre, npre, ai_start, ai_end, ai_vals,
                 i64 vmax, i64 j0, i64 wmax):
        self.contrib = contrib
        self.add = add
        self.neg = neg
        self.supp_ptr = supp_ptr
        self.supp_idx = supp_idx
        self.pre = pre
        self.npre = npre
        self.ai_start = ai_start
        self.ai_end = ai_end
        self.ai_vals = ai_vals
        self.vmax = vmax
        self.j0 = j0
        self.wmax = wmax
        self.n = contrib.shape[0]
        self.r = contrib.shape[2]
        self.q = add.shape[0]
        self.nodes = 0
        self.cur = np.zeros(self.n, dtype=np.int64)
        self.sig = np.zeros((wmax + 2, max(self.r, 1)), dtype=np.int64)
        self.avail = np.zeros((wmax + 2, self.n), dtype=np.int64)
        self.chosen = np.zeros((wmax + 2, max(vmax, 1)), dtype=np.int64)
        self.out = []

    cdef int step(self, Py_ssize_t depth, i64 w) except -1:
        cdef Py_ssize_t i, b = -1, na = 0, idx
        cdef i64 t, v, vtop, key, ai, j
        self.nodes += 1
        for i in range(self.r):
            if self.sig[depth, i] != 0:
                b = i
                break
        if b < 0:
            self.out.append(np.asarray(self.cur).copy())
            return 0
        t = self.neg[self.sig[depth, b]]
        for idx in range(self.supp_ptr[b], self.supp_ptr[b + 1]):
            j = self.supp_idx[idx]
            if j > self.j0 and self.cur[j] == 0:
                self.avail[depth, na] = j
                na += 1
        vtop = min(self.vmax, self.wmax - w, na)
        for v in range(1, vtop + 1):
            key = v * self.q + t
            for ai in range(self.ai_start[key], self.ai_end[key]):
                self.place(depth, b, v, ai, 0, 0, na, w)
        return 0

    cdef int place(self, Py_ssize_t depth, Py_ssize_t b, i64 v, i64 ai, i64 k, Py_ssize_t first,
                   Py_ssize_t na, i64 w) except -1:
        cdef Py_ssize_t idx, p, i, kk
        cdef i64 a, j, s
        if k == v:
            for i in range(self.r):
                self.sig[depth + 1, i] = self.sig[depth, i]
            for kk in range(v):
                j = self.chosen[depth, kk]
                s = self.cur[j]
                for i in range(self.r):
                    self.sig[depth + 1, i] = self.add[self.sig[depth + 1, i], self.contrib[j, s, i]]
            self.step(depth + 1, w + v)
            return 0
        a = self.ai_vals[ai, k]
        for idx in range(first, na - (v - k) + 1):
            j = self.avail[depth, idx]
            for p in range(self.npre[b, j, a]):
                s = self.pre[b, j, a, p]
                self.cur[j] = s
                self.chosen[depth, k] = j
                self.place(depth, b, v, ai, k + 1, idx + 1, na, w)
                self.cur[j] = 0
        return 0

    def run(self, start_syms):
        cdef Py_ssize_t i
        cdef i64 s0
        for s0 in start_syms:
            self.cur[self.j0] = s0
            for i in range(self.r):
                self.sig[0, i] = self.contrib[self.j0, s0, i]
            self.step(0, 1)
            self.cur[self.j0] = 0
        return self.out, self.nodes


def cluster_dfs(contrib, add, neg, supp_ptr, supp_idx, pre, npre, ai_start, ai_end, ai_vals,
                vmax, j0, start_syms, wmax):
    search = _ClusterSearch(contrib, add, neg, supp_ptr, supp_idx, pre, npre, ai_start, ai_end, ai_vals,
                            vmax, j0, wmax)
    out, nodes = search.run(start_syms)
    n = contrib.shape[0]
    if out:
        return np.array(out, dtype=np.int64), int(nodes)
    return np.zeros((0, n), dtype=np.int64), int(nodes)
