"""Pure-Python (numpy) implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or ``DISTVER_PURE_PYTHON=1`` is set.
"""

from __future__ import annotations

import itertools

import numpy as np

_CHUNK = 1 << 14


def rref_inplace(M, add, mul, inv, neg, pivot_cols=-1):
    """Reduce ``M`` (int64, entries are field indices) to reduced row echelon form.

    Only the first ``pivot_cols`` columns are eligible as pivots (all columns if
    negative).  Returns the list of pivot columns.
    """
    nrows, ncols = M.shape
    limit = ncols if pivot_cols < 0 else min(pivot_cols, ncols)
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        a = M[r, c]
        if a != 1:
            M[r] = mul[inv[a], M[r]]
        col = M[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            f = neg[col[rows]]
            M[rows] = add[M[rows], mul[f[:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return pivots


def span_scan(G, add, mul, q, u, nblocks, kc, wmax, offset):
    """Enumerate ``offset + span(G)`` over GF(q).

    A vector is *live* when ``kc < 0`` or one of its coefficients on rows
    ``kc..k-1`` is non-zero.  Returns ``(min_live_weight, vectors, live, count)``
    where ``vectors`` holds every non-zero vector of block weight ``<= wmax``
    and ``min_live_weight`` is -1 when there is no live vector.
    """
    k, N = G.shape
    total = q**k
    best = -1
    kept = []
    kept_live = []
    powers = q ** np.arange(k, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % q
        vec = np.broadcast_to(offset, (idx.size, N)).copy()
        for i in range(k):
            vec = add[vec, mul[coeffs[:, i, None], G[i][None, :]]]
        w = vec.reshape(idx.size, nblocks, u).any(axis=2).sum(axis=1)
        if kc < 0:
            live = np.ones(idx.size, dtype=bool)
        else:
            live = coeffs[:, kc:].any(axis=1)
        cand = w[live & (w > 0)]
        if cand.size:
            m = int(cand.min())
            if best < 0 or m < best:
                best = m
        if wmax >= 0:
            sel = (w > 0) & (w <= wmax)
            if sel.any():
                kept.append(vec[sel])
                kept_live.append(live[sel])
    if kept:
        vectors = np.concatenate(kept)
        live_out = np.concatenate(kept_live)
    else:
        vectors = np.zeros((0, N), dtype=np.int64)
        live_out = np.zeros(0, dtype=bool)
    return best, vectors, live_out, total


def cluster_dfs(contrib, add, neg, supp_ptr, supp_idx, pre, npre, ai_start, ai_end, ai_vals,
                vmax, j0, start_syms, wmax):
    """Depth-first search for irreducible clusters started at position ``j0``.

    ``contrib[j, s]`` is the syndrome of symbol ``s`` at position ``j``.  The
    first unsatisfied check ``b`` is always extended by a set ``I`` of new
    positions ``> j0`` in its support carrying an additively irreducible
    string whose check values sum to ``-sigma_b``; ``pre[b, j, a]`` lists the
    symbols at ``j`` with check value ``a``.  Every assignment that satisfies
    all checks with at most ``wmax`` symbols is emitted as a length-``n``
    symbol vector.  Returns ``(emitted, nodes)``.
    """
    n, _, r = contrib.shape
    q = add.shape[0]
    cur = np.zeros(n, dtype=np.int64)
    out = []
    nodes = 0

    def step(sigma, w):
        nonlocal nodes
        nodes += 1
        b = -1
        for i in range(r):
            if sigma[i]:
                b = i
                break
        if b < 0:
            out.append(cur.copy())
            return
        t = int(neg[sigma[b]])
        avail = [int(j) for j in supp_idx[supp_ptr[b]:supp_ptr[b + 1]] if j > j0 and cur[j] == 0]
        for v in range(1, min(vmax, wmax - w, len(avail)) + 1):
            lo, hi = ai_start[v * q + t], ai_end[v * q + t]
            if lo == hi:
                continue
            for I in itertools.combinations(avail, v):
                for a in ai_vals[lo:hi]:
                    choices = [pre[b, I[k], a[k], :npre[b, I[k], a[k]]] for k in range(v)]
                    for syms in itertools.product(*choices):
                        sig = sigma
                        for k in range(v):
                            cur[I[k]] = syms[k]
                            sig = add[sig, contrib[I[k], syms[k]]]
                        step(sig, w + v)
                        for k in range(v):
                            cur[I[k]] = 0

    for s0 in start_syms:
        cur[j0] = s0
        step(contrib[j0, s0].copy(), 1)
        cur[j0] = 0
    if out:
        return np.array(out, dtype=np.int64), nodes
    return np.zeros((0, n), dtype=np.int64), nodes
