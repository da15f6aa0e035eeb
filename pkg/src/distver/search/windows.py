"""Window-based engines: sliding window (SW), matching bipartition (MB) and
punctured bipartition (PB).

All three walk trial weights ``d = 1, 2, ...`` and rely on the same
averaging fact: along the ``n`` cyclic shifts of a window of length ``s``,
the weight a fixed codeword of weight ``d`` puts into the window changes by
at most one per shift and averages ``d s / n``, so some shift carries
exactly ``floor(d s / n)`` of it.
"""

from __future__ import annotations

import math

import numpy as np

from .. import linalg
from ..codes import BlockCode
from ..errors import ConfigurationError
from .common import (
    Executor,
    HitFilter,
    LevelLoop,
    Outcome,
    SearchBudget,
    SearchResult,
    Target,
    as_targets,
    combine,
    coords,
    empty_result,
    match_pairs,
    pack_keys,
    scatter,
    syndromes,
    weight_vectors,
)


def cyclic_window(n: int, start: int, length: int) -> list[int]:
    return [(start + t) % n for t in range(length)]


class WindowCompleter:
    """Erasure completion of vectors known on a window.

    Solves ``H_J x = target - syn`` on the complement ``J`` of the window
    and adds every element of ``ker H_J`` (codewords vanishing on the
    window).  When that kernel has more than ``limit`` elements the window
    is marked as skipped.
    """

    def __init__(self, B: BlockCode, window: list[int], limit: int):
        self.B = B
        inside = set(window)
        self.rest = [j for j in range(B.n) if j not in inside]
        self.cj = coords(self.rest, B.u)
        self.solver = linalg.LinearSolver(B.F, B.H[:, self.cj])
        size = B.F.q**self.solver.corank
        self.skipped = size > limit
        self.combos = None if self.skipped else linalg.combinations_of_rows(B.F, self.solver.kernel)

    @property
    def corank(self) -> int:
        return self.solver.corank

    def complete(self, X: np.ndarray, syn: np.ndarray, target: np.ndarray | None) -> np.ndarray:
        """``X`` holds the window entries (zeros elsewhere); returns all completions."""
        F = self.B.F
        rhs = F.neg[syn] if target is None else F.sub[target[None, :], syn]
        part, ok = self.solver.solve(rhs)
        X, part = X[ok], part[ok]
        if X.shape[0] == 0:
            return X
        m = self.combos.shape[0]
        fill = F.add[np.repeat(part, m, axis=0), np.tile(self.combos, (part.shape[0], 1))]
        out = np.repeat(X, m, axis=0)
        out[:, self.cj] = fill
        return out


def _normalize_symbols(B: BlockCode, syndrome_mode: bool) -> bool:
    # one representative per scalar multiple; only valid for GF(q)-linear search of codewords
    return B.u == 1 and B.F.q > 2 and not syndrome_mode


# --------------------------------------------------------------------------- SW


class _SWState:
    def __init__(self, B: BlockCode, s: int, budget: SearchBudget, h):
        self.B = B
        self.s = s
        self.h = h
        self.filter = HitFilter(B, h is not None)
        self.normalize = _normalize_symbols(B, h is not None)
        self.windows = [cyclic_window(B.n, i, s) for i in range(B.n)]
        self.completers = [WindowCompleter(B, w, budget.completion_limit) for w in self.windows]


def _sw_unit(state: _SWState, d: int, i: int) -> Outcome:
    B = state.B
    comp = state.completers[i]
    if comp.skipped:
        return Outcome(skipped=1, notes=(f"window {i} skipped: co-rank {comp.corank} exceeds the completion limit",))
    v = (d * state.s) // B.n
    out = Outcome()
    for pos, sym in weight_vectors(state.windows[i], v, B.alphabet, state.normalize and v > 0):
        X = scatter(B, pos, sym)
        full = comp.complete(X, syndromes(B, pos, sym), state.h)
        hit = state.filter.best(full, d)
        hit.trials = pos.shape[0]
        out = out.merge(hit)
    return out


def sw_window_length(B: BlockCode, theta: float | None = None, epsilon: float = 0.01) -> int:
    """Generic ``k + 2 floor(log_A n)`` (in symbols), or ``ceil((1 - theta + eps) n)`` for LDPC mode."""
    n = B.n
    if theta is not None:
        if not 0 < theta < 1:
            raise ConfigurationError("theta must lie in (0, 1)")
        s = math.ceil((1 - theta + epsilon) * n)
    else:
        k_eff = -(-B.dim // B.u)
        s = k_eff + 2 * int(math.floor(math.log(n) / math.log(B.alphabet) + 1e-12)) if n > 1 else k_eff
    return max(1, min(n, s))


def _sw_block(target: Target, budget, jobs, window, theta, epsilon, h) -> SearchResult:
    B = target.block
    if h is None and B.dim == B.excluded_dim:
        return empty_result("sw")
    s = window if window is not None else sw_window_length(B, theta, epsilon)
    if not 1 <= s <= B.n:
        raise ConfigurationError(f"window length must lie in 1..{B.n}")
    state = _SWState(B, s, budget, h)
    loop = LevelLoop("sw", B, budget)
    loop.notes.append(f"window length s = {s}")
    if any(c.corank for c in state.completers):
        loop.notes.append("some windows are not information sets; using multi-completion")
    with Executor(state, jobs) as ex:
        outcome, last, complete = loop.run(ex, _sw_unit, lambda d: range(B.n))
    return loop.result(target, outcome, last, complete)


def sw_distance(code, budget: SearchBudget | None = None, *, window: int | None = None,
                theta: float | None = None, epsilon: float = 0.01, jobs: int | None = None,
                syndrome=None) -> SearchResult:
    """Sliding-window search.

    For each trial weight ``d`` and each cyclic window of length ``s``, every
    window vector of weight ``floor(d s / n)`` is completed to all codewords
    that agree with it, and the lightest logical one wins.
    """
    budget = budget or SearchBudget()
    targets = _single_if_syndrome(code, syndrome)
    h = None if syndrome is None else np.asarray(syndrome, dtype=np.int64)
    return combine([_sw_block(t, budget, jobs, window, theta, epsilon, h) for t in targets], "sw")


def _single_if_syndrome(code, syndrome):
    targets = as_targets(code)
    if syndrome is not None and len(targets) != 1:
        raise ConfigurationError("syndrome mode needs a single parity-check matrix")
    return targets


# --------------------------------------------------------------------------- MB


def bipartition_matches(B: BlockCode, left: list[int], right: list[int], a: int, b: int,
                        target: np.ndarray | None, normalize: bool) -> tuple[np.ndarray, int]:
    """All ``e_l + e_r`` with ``wt(e_l) = a`` on ``left``, ``wt(e_r) = b`` on ``right``
    and ``H(e_l + e_r) = target`` (zero when ``target`` is None).

    Returns the matched vectors (dense coordinates) and the number of
    half-vectors generated.
    """
    norm_left = normalize and a > 0
    norm_right = normalize and a == 0
    L = [(p, s) for p, s in weight_vectors(left, a, B.alphabet, norm_left)]
    R = [(p, s) for p, s in weight_vectors(right, b, B.alphabet, norm_right)]
    if not L or not R:
        return np.zeros((0, B.n * B.u), np.int64), 0
    lp = np.concatenate([p for p, _ in L])
    ls = np.concatenate([s for _, s in L])
    rp = np.concatenate([p for p, _ in R])
    rs = np.concatenate([s for _, s in R])
    F = B.F
    syn_l = syndromes(B, lp, ls)
    syn_r = syndromes(B, rp, rs)
    want = F.neg[syn_r] if target is None else F.sub[target[None, :], syn_r]
    li, ri = match_pairs(pack_keys(syn_l, F.q), pack_keys(want, F.q))
    count = lp.shape[0] + rp.shape[0]
    if li.size == 0:
        return np.zeros((0, B.n * B.u), np.int64), count
    X = scatter(B, np.concatenate([lp[li], rp[ri]], axis=1), np.concatenate([ls[li], rs[ri]], axis=1))
    return X, count


class _MBState:
    def __init__(self, B: BlockCode, h):
        self.B = B
        self.h = h
        self.filter = HitFilter(B, h is not None)
        self.normalize = _normalize_symbols(B, h is not None)
        half = B.n // 2
        self.splits = []
        for i in range(B.n):
            left = cyclic_window(B.n, i, half)
            inside = set(left)
            self.splits.append((left, [j for j in range(B.n) if j not in inside]))


def _mb_unit(state: _MBState, d: int, i: int) -> Outcome:
    left, right = state.splits[i]
    a = d // 2
    X, count = bipartition_matches(state.B, left, right, a, d - a, state.h, state.normalize)
    hit = state.filter.best(X, d)
    hit.trials = count
    return hit


def _mb_block(target: Target, budget, jobs, h) -> SearchResult:
    B = target.block
    if h is None and B.dim == B.excluded_dim:
        return empty_result("mb")
    state = _MBState(B, h)
    loop = LevelLoop("mb", B, budget)
    with Executor(state, jobs) as ex:
        outcome, last, complete = loop.run(ex, _mb_unit, lambda d: range(B.n))
    return loop.result(target, outcome, last, complete)


def mb_distance(code, budget: SearchBudget | None = None, *, jobs: int | None = None,
                syndrome=None) -> SearchResult:
    """Matching-bipartition search.

    For each trial weight ``d`` and each of the ``n`` cyclic splits into a
    left half of ``floor(n/2)`` positions and the remaining right half,
    vectors of weight ``floor(d/2)`` on the left are matched by syndrome
    against vectors of weight ``ceil(d/2)`` on the right.  In syndrome mode
    the right syndromes are shifted by the target syndrome.
    """
    budget = budget or SearchBudget()
    targets = _single_if_syndrome(code, syndrome)
    h = None if syndrome is None else np.asarray(syndrome, dtype=np.int64)
    return combine([_mb_block(t, budget, jobs, h) for t in targets], "mb")


# --------------------------------------------------------------------------- PB


class _PBState:
    def __init__(self, B: BlockCode, s: int, budget: SearchBudget):
        self.B = B
        self.s = s
        self.filter = HitFilter(B, False)
        self.normalize = _normalize_symbols(B, False)
        G = B.generator
        self.windows = [cyclic_window(B.n, i, s) for i in range(B.n)]
        self.punctured = []
        self.completers = []
        for w in self.windows:
            cw = coords(w, B.u)
            H_I = linalg.nullspace(B.F, G[:, cw], len(cw)) if G.shape[0] else np.eye(len(cw), dtype=np.int64)
            self.punctured.append(BlockCode(B.F, B.u, s, H_I, label="punctured"))
            self.completers.append(WindowCompleter(B, w, budget.completion_limit))


def punctured_list(P: BlockCode, v: int, normalize: bool) -> tuple[np.ndarray, int]:
    """Every codeword of weight exactly ``v`` in ``P``, by bipartition over all rotations."""
    s = P.n
    if v == 0:
        return np.zeros((1, s * P.u), np.int64), 1
    half = s // 2
    a = v // 2
    found = []
    count = 0
    for t in range(s):
        left = cyclic_window(s, t, half)
        inside = set(left)
        right = [j for j in range(s) if j not in inside]
        X, c = bipartition_matches(P, left, right, a, v - a, None, normalize)
        count += c
        if X.shape[0]:
            found.append(X)
    if not found:
        return np.zeros((0, s * P.u), np.int64), count
    return np.unique(np.concatenate(found), axis=0), count


def _pb_unit(state: _PBState, d: int, i: int) -> Outcome:
    B = state.B
    comp = state.completers[i]
    if comp.skipped:
        return Outcome(skipped=1, notes=(f"window {i} skipped: co-rank {comp.corank} exceeds the completion limit",))
    v = (d * state.s) // B.n
    Y, count = punctured_list(state.punctured[i], v, state.normalize)
    if Y.shape[0] == 0:
        return Outcome(trials=count)
    cw = coords(state.windows[i], B.u)
    X = np.zeros((Y.shape[0], B.n * B.u), dtype=np.int64)
    X[:, cw] = Y
    syn = linalg.matmul(B.F, Y, B.H[:, cw].T)
    hit = state.filter.best(comp.complete(X, syn, None), d)
    hit.trials = count
    return hit


def pb_window_length(B: BlockCode) -> int:
    """``ceil(2 n R / (1 + R))`` with ``R`` the rate of the searched code in symbols."""
    R = B.dim / (B.n * B.u)
    s = math.ceil(2 * B.n * R / (1 + R) - 1e-12)
    return max(1, min(B.n, s))


def _pb_block(target: Target, budget, jobs, window) -> SearchResult:
    B = target.block
    if B.dim == B.excluded_dim:
        return empty_result("pb")
    s = window if window is not None else pb_window_length(B)
    if not 1 <= s <= B.n:
        raise ConfigurationError(f"window length must lie in 1..{B.n}")
    if s >= B.n:
        res = _mb_block(target, budget, jobs, None)
        res.algorithm = "pb"
        res.notes = res.notes + ("window covers the whole code; ran plain MB",)
        return res
    state = _PBState(B, s, budget)
    loop = LevelLoop("pb", B, budget)
    loop.notes.append(f"window length s = {s}")
    with Executor(state, jobs) as ex:
        outcome, last, complete = loop.run(ex, _pb_unit, lambda d: range(B.n))
    return loop.result(target, outcome, last, complete)


def pb_distance(code, budget: SearchBudget | None = None, *, window: int | None = None,
                jobs: int | None = None) -> SearchResult:
    """Punctured-bipartition search.

    Per window of length ``s``, the punctured code is searched by matching
    bipartition for its codewords of weight ``floor(d s / n)``; each one is
    re-encoded to full length by erasure completion.
    """
    budget = budget or SearchBudget()
    return combine([_pb_block(t, budget, jobs, window) for t in as_targets(code)], "pb")
