"""Exhaustive enumeration of the code: the reference every engine is checked against."""

from __future__ import annotations

import numpy as np

from .. import kernels, linalg
from ..codes import BlockCode
from ..errors import ConfigurationError, InfeasibleError
from .common import HitFilter, SearchBudget, SearchResult, Target, as_targets, combine, empty_result

ALGORITHM = "brute"


def _particular(B: BlockCode, h: np.ndarray) -> np.ndarray | None:
    solver = linalg.LinearSolver(B.F, B.H)
    X, ok = solver.solve(h[None, :])
    return X[0] if ok[0] else None


def _brute_block(target: Target, budget: SearchBudget, h: np.ndarray | None) -> SearchResult:
    B = target.block
    F = B.F
    G = np.ascontiguousarray(B.generator, dtype=np.int64)
    k = G.shape[0]
    if h is None and k == B.excluded_dim:
        return empty_result(ALGORITHM)
    size = F.q**k
    limit = budget.enumeration_limit
    if budget.max_candidates is not None:
        limit = min(limit, budget.max_candidates)
    if size > limit:
        raise InfeasibleError(f"brute force would enumerate {F.q}^{k} = {size} vectors (limit {limit})")
    if h is None:
        offset = np.zeros(B.n * B.u, dtype=np.int64)
        kc = B.excluded_dim
    else:
        offset = _particular(B, np.asarray(h, dtype=np.int64))
        if offset is None:
            return SearchResult(None, None, 0, False, ALGORITHM, 0, ("syndrome is not attainable",))
        kc = -1
        if not offset.any():
            # zero syndrome: the coset is the code itself
            kc = B.excluded_dim
    best, _, _, count = kernels.span_scan(G, F.add, F.mul, F.q, B.u, B.n, kc, -1, offset)
    if best < 0:
        return empty_result(ALGORITHM, int(count))
    _, vecs, live, _ = kernels.span_scan(G, F.add, F.mul, F.q, B.u, B.n, kc, best, offset)
    vecs = vecs[live]
    hit = HitFilter(B, syndrome_mode=h is not None and bool(offset.any())).best(vecs, best)
    c = target.witness(B.to_codeword(hit.vec))
    return SearchResult(best, c, int(count), False, ALGORITHM, best - 1)


def brute_force_distance(code, budget: SearchBudget | None = None, syndrome=None) -> SearchResult:
    """Exact distance by enumerating every codeword.

    With ``syndrome`` the coset ``{e : H e = syndrome}`` is enumerated
    instead and the result is the minimum error weight.  Raises
    :class:`InfeasibleError` when the code has more than
    ``budget.enumeration_limit`` elements.
    """
    budget = budget or SearchBudget()
    targets = as_targets(code)
    if syndrome is not None and len(targets) != 1:
        raise ConfigurationError("syndrome mode needs a single parity-check matrix")
    h = None if syndrome is None else np.asarray(syndrome, dtype=np.int64)
    return combine([_brute_block(t, budget, h) for t in targets], ALGORITHM)


def all_codewords(B: BlockCode, max_weight: int, budget: SearchBudget | None = None) -> np.ndarray:
    """Every non-zero, non-excluded codeword of weight ``<= max_weight`` (coordinate rows)."""
    budget = budget or SearchBudget()
    F = B.F
    G = np.ascontiguousarray(B.generator, dtype=np.int64)
    if F.q ** G.shape[0] > budget.enumeration_limit:
        raise InfeasibleError("code too large to enumerate")
    offset = np.zeros(B.n * B.u, dtype=np.int64)
    _, vecs, live, _ = kernels.span_scan(G, F.add, F.mul, F.q, B.u, B.n, B.excluded_dim, max_weight, offset)
    return vecs[live]
