"""Irreducible-cluster (IC) search for sparse parity checks, and the
additively irreducible strings it is built on.

A codeword is irreducible when it is not the sum of two non-zero codewords
with disjoint supports; minimum-weight codewords always are.  The search
grows a vector from one start position, each step satisfying the first
unsatisfied parity check with a minimal (additively irreducible) set of new
symbols, and so reaches every irreducible codeword whose first non-zero
position is the start.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..codes import BlockCode, Codeword
from ..errors import ConfigurationError
from ..field import gf
from .common import (
    Excluder,
    Executor,
    SearchBudget,
    SearchResult,
    Target,
    as_targets,
    combine,
    empty_result,
)


@dataclass(frozen=True)
class AIStrings:
    """Length-``v`` strings over GF(q) with every non-empty subset sum non-zero.

    ``count`` is ``A_v(q)``; ``per_value`` is ``N_v(q) = A_v(q) / (q - 1)``,
    the number of such strings with any one prescribed non-zero sum.
    """

    q: int
    v: int
    strings: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.strings)

    @property
    def per_value(self) -> int:
        return self.count // (self.q - 1)


def max_ai_length(q: int) -> int:
    """Longest zero-sum-free string over GF(q) = (Z_p)^u: ``u (p - 1)``."""
    F = gf(q)
    return F.u * (F.p - 1)


def enumerate_ai_strings(q: int, v: int) -> AIStrings:
    """Exhaustive enumeration over all ``(q - 1)^v`` non-zero strings.

    Lengths up to one past the longest possible string are enumerated; longer
    ones are empty by the zero-sum-free bound and are not enumerated.
    """
    F = gf(q)
    if v < 1 or v > max_ai_length(q) + 1:
        return AIStrings(q, v, ())
    found = []
    masks = [m for m in range(1, 1 << v)]
    for s in itertools.product(range(1, q), repeat=v):
        # subset sums by doubling: sums[m] = sum of s[k] for bits k of m
        sums = [0] * (1 << v)
        ok = True
        for m in masks:
            low = m & -m
            k = low.bit_length() - 1
            val = F.add[sums[m ^ low], s[k]]
            if val == 0:
                ok = False
                break
            sums[m] = int(val)
        if ok:
            found.append(s)
    return AIStrings(q, v, tuple(found))


def is_irreducible(B: BlockCode, vec: np.ndarray) -> bool:
    """True unless some non-empty proper part of ``vec``'s support is itself a codeword."""
    entries = B.to_codeword(vec).entries
    supp = [j for j, e in enumerate(entries) if e]
    if len(supp) <= 1:
        return True
    F = B.F
    rows = [B.contributions[j, entries[j]] for j in supp]
    # parts containing the first support position; the full support is the codeword itself
    sums = rows[0][None, :].copy()
    for row in rows[1:]:
        sums = np.concatenate([sums, F.add[sums, row[None, :]]])
    zero = ~sums.any(axis=1)
    zero[-1] = False
    return not zero.any()


class _ClusterTables:
    """Flat lookup tables for the DFS kernel."""

    def __init__(self, B: BlockCode):
        F = B.F
        q, n, r, A = F.q, B.n, B.r, B.alphabet
        C = np.ascontiguousarray(B.contributions, dtype=np.int64)
        self.contrib = C
        blocks = B.H.reshape(r, n, B.u).any(axis=2)
        ptr = [0]
        idx = []
        for b in range(r):
            cols = np.flatnonzero(blocks[b])
            idx.extend(int(j) for j in cols)
            ptr.append(len(idx))
        self.supp_ptr = np.array(ptr, dtype=np.int64)
        self.supp_idx = np.array(idx, dtype=np.int64)
        P = max(1, A // q) if B.u > 1 else 1
        pre = np.zeros((r, n, q, P), dtype=np.int64)
        npre = np.zeros((r, n, q), dtype=np.int64)
        for b in range(r):
            for j in self.supp_idx[self.supp_ptr[b]:self.supp_ptr[b + 1]]:
                for s in range(1, A):
                    a = C[j, s, b]
                    if a:
                        if npre[b, j, a] >= P:
                            raise ConfigurationError("unexpected preimage count")
                        pre[b, j, a, npre[b, j, a]] = s
                        npre[b, j, a] += 1
        self.pre, self.npre = pre, npre
        vmax = max_ai_length(q)
        strings = [(v, s) for v in range(1, vmax + 1) for s in enumerate_ai_strings(q, v).strings]
        start = np.zeros((vmax + 1) * q, dtype=np.int64)
        end = np.zeros((vmax + 1) * q, dtype=np.int64)
        vals = np.zeros((max(1, len(strings)), max(1, vmax)), dtype=np.int64)
        keyed = sorted(strings, key=lambda vs: (vs[0], _string_sum(F, vs[1]), vs[1]))
        for i, (v, s) in enumerate(keyed):
            vals[i, :v] = s
            key = v * q + _string_sum(F, s)
            if end[key] == 0:
                start[key] = i
            end[key] = i + 1
        self.ai_start, self.ai_end, self.ai_vals = start, end, vals
        self.vmax = vmax
        self.add = np.ascontiguousarray(F.add)
        self.neg = np.ascontiguousarray(F.neg)


def _string_sum(F, s) -> int:
    acc = 0
    for x in s:
        acc = int(F.add[acc, x])
    return acc


class _ICState:
    def __init__(self, B: BlockCode):
        self.B = B
        self.tables = _ClusterTables(B)
        # one start value per scalar class for GF(q)-linear codes with u = 1
        self.start_syms = np.array([1] if B.u == 1 else list(range(1, B.alphabet)), dtype=np.int64)


def _ic_unit(state: _ICState, wmax: int, j0: int) -> tuple[np.ndarray, int]:
    T = state.tables
    vecs, nodes = kernels.cluster_dfs(T.contrib, T.add, T.neg, T.supp_ptr, T.supp_idx, T.pre, T.npre,
                                      T.ai_start, T.ai_end, T.ai_vals, T.vmax, j0, state.start_syms, wmax)
    return vecs, int(nodes)


def _run_units(ex: Executor, state: _ICState, wmax: int) -> tuple[np.ndarray, int]:
    """All emitted vectors for weight bound ``wmax`` over every start position."""
    B = state.B
    parts = []
    trials = 0
    for vecs, nodes in ex.map(_ic_unit, wmax, range(B.n)):
        trials += nodes
        if vecs.shape[0]:
            parts.append(vecs)
    if not parts:
        return np.zeros((0, B.n), np.int64), trials
    return np.unique(np.concatenate(parts), axis=0), trials


def _symbols_to_coords(B: BlockCode, S: np.ndarray) -> np.ndarray:
    return B.symbol_digits()[S].reshape(S.shape[0], -1)


def irreducible_codewords(code_or_block, max_weight: int, *, logical_only: bool = True,
                          jobs: int | None = None) -> list[Codeword]:
    """All irreducible codewords of weight ``<= max_weight``, one per scalar class.

    For codes with an excluded subcode (stabilizer groups) only logical
    vectors are kept unless ``logical_only`` is false.  Codewords come back
    in canonical order.
    """
    out: list[Codeword] = []
    for target in as_targets(code_or_block):
        B = target.block
        state = _ICState(B)
        with Executor(state, jobs) as ex:
            S, _ = _run_units(ex, state, max_weight)
        out.extend(target.witness(c) for c in _accept(B, state, S, logical_only))
    return sorted(set(out), key=Codeword.sort_key)


def _accept(B: BlockCode, state: _ICState, S: np.ndarray, logical_only: bool) -> list[Codeword]:
    if S.shape[0] == 0:
        return []
    X = _symbols_to_coords(B, S)
    keep = np.array([is_irreducible(B, x) for x in X], dtype=bool)
    if logical_only and B.excluded_dim:
        keep &= ~Excluder(B.F, B.excluded)(X)
    words = []
    for x in X[keep]:
        words.append(B.to_codeword(B.normalize(x) if B.F.q > 2 else x))
    return sorted(set(words), key=Codeword.sort_key)


def _ic_block(target: Target, budget: SearchBudget, jobs) -> SearchResult:
    B = target.block
    if B.dim == B.excluded_dim:
        return empty_result("ic")
    D = min(budget.max_weight or B.n, B.n)
    state = _ICState(B)
    trials = 0
    with Executor(state, jobs) as ex:
        for wmax in range(1, D + 1):
            S, t = _run_units(ex, state, wmax)
            trials += t
            hits = _accept(B, state, S, True)
            if hits:
                best = hits[0]
                return SearchResult(best.weight, target.witness(best), trials, False, "ic", best.weight - 1)
            if budget.max_candidates is not None and trials >= budget.max_candidates:
                return SearchResult(None, None, trials, True, "ic", wmax,
                                    (f"candidate budget exhausted after weight {wmax}",))
    if D == B.n:
        return empty_result("ic", trials)
    return SearchResult(None, None, trials, True, "ic", D, (f"no codeword of weight <= {D}",))


def ic_distance(code, budget: SearchBudget | None = None, *, jobs: int | None = None) -> SearchResult:
    """Irreducible-cluster search with iterative deepening on the weight bound.

    ``budget.max_weight`` is the largest weight D explored; when no
    logical codeword of weight ``<= D`` exists the result is the bound
    ``d > D``.
    """
    budget = budget or SearchBudget()
    return combine([_ic_block(t, budget, jobs) for t in as_targets(code)], "ic")
