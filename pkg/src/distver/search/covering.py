"""Covering-set (CS) search: codewords hidden inside random or covering
families of position sets ``J``.

For each set ``J`` the parity checks restricted to ``J`` are reduced; every
element of their kernel is a codeword supported inside ``J``.  A family
covering every ``d``-subset of positions finds every codeword of weight
``d``.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .. import kernels, linalg
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
)

MODES = ("auto", "random", "exhaustive")


def covering_trials(n: int, rho: int, d: int) -> float:
    """``C(n, d) / C(rho, d)``: the fewest sets of size ``rho`` that can cover all ``d``-sets."""
    if d > rho:
        return math.inf
    return math.comb(n, d) / math.comb(rho, d)


def random_set_count(n: int, rho: int, d: int) -> int:
    """``ceil(T(n, rho, d) n ln n)`` random sets, enough to cover with high probability."""
    return math.ceil(covering_trials(n, rho, d) * n * math.log(max(n, 2)))


def default_b_max(n: int, rho: int, q: int) -> int:
    """``ceil(sqrt(2 log_q C(n, rho)))``, the co-rank most square submatrices stay under."""
    return max(1, math.ceil(math.sqrt(2 * math.log(math.comb(n, rho)) / math.log(q))))


def group_cover(n: int, rho: int, d: int) -> list[tuple[int, ...]]:
    """A deterministic family covering every ``d``-subset of ``range(n)``.

    Positions are split into ``g = floor(d n / rho)`` contiguous groups and
    each set is a union of ``d`` groups; a ``d``-subset meets at most ``d``
    groups, so some union contains it.
    """
    g = max(d, min(n, (d * n) // max(rho, 1)))
    bounds = [round(i * n / g) for i in range(g + 1)]
    groups = [tuple(range(bounds[i], bounds[i + 1])) for i in range(g)]
    return [tuple(sorted(itertools.chain.from_iterable(groups[i] for i in pick)))
            for pick in itertools.combinations(range(g), d)]


def _group_count(n: int, rho: int, d: int) -> int:
    return math.comb(max(d, min(n, (d * n) // max(rho, 1))), d)


def subset_family(n: int, rho: int, d: int, mode: str, seed: int, cap: int | None) -> tuple[list, str]:
    """Position sets for trial weight ``d`` and a label: ``all``, ``cover``,
    ``random`` or ``random-capped``."""
    T = random_set_count(n, rho, d)
    total = math.comb(n, rho)
    if mode == "auto":
        mode = "exhaustive" if total <= T else "random"
    if mode == "exhaustive":
        if total <= _group_count(n, rho, d):
            return list(itertools.combinations(range(n), rho)), "all"
        return group_cover(n, rho, d), "cover"
    count = T if cap is None else min(T, cap)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, d])))
    sets = []
    for start in range(0, count, 4096):
        m = min(4096, count - start)
        order = rng.random((m, n)).argsort(axis=1)[:, :rho]
        order.sort(axis=1)
        sets.extend(tuple(int(x) for x in row) for row in order)
    return sets, "random" if count == T else "random-capped"


class _CSState:
    def __init__(self, B: BlockCode, b_max: int, h):
        self.B = B
        self.b_max = b_max
        self.h = h
        self.filter = HitFilter(B, h is not None)


def _cs_unit(state: _CSState, d: int, J: tuple[int, ...]) -> Outcome:
    B = state.B
    F = B.F
    cj = coords(J, B.u)
    if state.h is None:
        M = np.ascontiguousarray(B.H[:, cj])
        piv = kernels.rref_inplace(M, F.add, F.mul, F.inv, F.neg, -1) if M.size else []
        b = len(cj) - len(piv)
        if b == 0:
            return Outcome(trials=0)
        if b > state.b_max:
            return Outcome(skipped=1, notes=(f"sets with co-rank above b_max = {state.b_max} skipped",))
        free = [c for c in range(len(cj)) if c not in set(piv)]
        K = np.zeros((b, len(cj)), dtype=np.int64)
        for t, f in enumerate(free):
            K[t, f] = 1
            for i, pc in enumerate(piv):
                K[t, pc] = F.neg[M[i, f]]
        combos = linalg.combinations_of_rows(F, K)[1:]
    else:
        solver = linalg.LinearSolver(F, B.H[:, cj])
        b = solver.corank
        if b > state.b_max:
            return Outcome(skipped=1, notes=(f"sets with co-rank above b_max = {state.b_max} skipped",))
        x0, ok = solver.solve(state.h[None, :])
        if not ok[0]:
            return Outcome(trials=1)
        combos = F.add[x0, linalg.combinations_of_rows(F, solver.kernel)]
    X = np.zeros((combos.shape[0], B.n * B.u), dtype=np.int64)
    X[:, cj] = combos
    hit = state.filter.best(X, d)
    hit.trials = combos.shape[0]
    return hit


def cs_set_size(B: BlockCode, theta: float | None = None, epsilon: float = 0.01) -> int:
    """``rank / u`` symbols (generic) or ``ceil((theta - eps) n)`` (LDPC mode)."""
    if theta is not None:
        if not 0 < theta <= 1:
            raise ConfigurationError("theta must lie in (0, 1]")
        return max(1, min(B.n, math.ceil((theta - epsilon) * B.n)))
    return max(1, min(B.n, B.rank // B.u))


def _cs_block(target: Target, budget: SearchBudget, jobs, mode, set_size, theta, epsilon, h) -> SearchResult:
    B = target.block
    if h is None and B.dim == B.excluded_dim:
        return empty_result("cs")
    rho = set_size if set_size is not None else cs_set_size(B, theta, epsilon)
    if not 1 <= rho <= B.n:
        raise ConfigurationError(f"set size must lie in 1..{B.n}")
    b_max = budget.b_max if budget.b_max is not None else default_b_max(B.n, rho, B.F.q)
    state = _CSState(B, b_max, h)
    loop = LevelLoop("cs", B, budget)
    loop.notes.append(f"set size rho = {rho}, b_max = {b_max}")
    labels = {}

    def units(d):
        size = min(B.n, max(rho, d))
        sets, label = subset_family(B.n, size, d, mode, budget.seed, budget.max_candidates)
        labels[d] = label
        return sets

    with Executor(state, jobs) as ex:
        outcome, last, complete = loop.run(ex, _cs_unit, units)
    kinds = set(labels.values())
    if "random-capped" in kinds:
        complete = False
        loop.notes.append("random family cut by the candidate budget: result is an upper bound")
    elif "random" in kinds:
        loop.notes.append("random family covers every d-subset with probability >= 1 - exp(-n ln n)")
    return loop.result(target, outcome, last, complete)


def cs_distance(code, budget: SearchBudget | None = None, *, mode: str = "auto",
                set_size: int | None = None, theta: float | None = None, epsilon: float = 0.01,
                jobs: int | None = None, syndrome=None) -> SearchResult:
    """Covering-set search.

    ``mode`` selects the family of sets ``J`` per trial weight: ``random``
    draws ``ceil(T n ln n)`` seeded random sets, ``exhaustive`` uses a family
    that provably covers every ``d``-subset (all ``rho``-subsets, or a group
    cover when those are too many), ``auto`` picks exhaustive when all
    subsets are no more than the random count.  Only covering families give
    exact answers.
    """
    if mode not in MODES:
        raise ConfigurationError(f"unknown covering mode {mode!r}; expected one of {MODES}")
    budget = budget or SearchBudget()
    targets = as_targets(code)
    if syndrome is not None and len(targets) != 1:
        raise ConfigurationError("syndrome mode needs a single parity-check matrix")
    h = None if syndrome is None else np.asarray(syndrome, dtype=np.int64)
    return combine([_cs_block(t, budget, jobs, mode, set_size, theta, epsilon, h) for t in targets], "cs")
