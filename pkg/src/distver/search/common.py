"""Shared plumbing for the distance engines: budgets, results, the trial-weight
loop, parallel execution of independent work units and canonical witnesses.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .. import linalg
from ..codes import DEFAULT_COMPLETION_LIMIT, BlockCode, Codeword, CssCode, LinearCode, StabilizerCode
from ..errors import ConfigurationError, DomainError
from ..field import GaloisField

JOBS_ENV = "DISTVER_JOBS"


@dataclass(frozen=True)
class SearchBudget:
    """Limits shared by all engines.

    ``max_weight`` is the largest trial weight D (default: n).
    ``max_candidates`` caps the total trial count, checked between trial
    weights so the cut is the same for any number of jobs.  ``wall_clock``
    (seconds) is checked at the same points.  ``b_max`` caps the co-rank of
    covering sets; ``completion_limit`` caps erasure completions per window.
    ``enumeration_limit`` is the largest code size brute force accepts.
    """

    max_weight: int | None = None
    max_candidates: int | None = None
    wall_clock: float | None = None
    seed: int = 0
    b_max: int | None = None
    completion_limit: int = DEFAULT_COMPLETION_LIMIT
    enumeration_limit: int = 1 << 26

    def __post_init__(self):
        for name in ("max_weight", "max_candidates", "wall_clock", "b_max"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise ConfigurationError(f"budget {name} must be positive")
        if self.completion_limit <= 0 or self.enumeration_limit <= 0:
            raise ConfigurationError("budget limits must be positive")
        if self.seed < 0:
            raise ConfigurationError("seed must be non-negative")


@dataclass
class SearchResult:
    """Outcome of a distance search.

    ``distance`` is the weight of ``witness`` (``None`` when nothing was
    found).  When ``truncated`` is false the distance is exact.  Otherwise
    ``distance`` is only an upper bound, and every logical vector of weight
    ``<= lower_bound`` has been ruled out.
    """

    distance: int | None
    witness: Codeword | None
    trials: int
    truncated: bool
    algorithm: str
    lower_bound: int = 0
    notes: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.distance is not None and not self.truncated

    def summary(self) -> str:
        if self.exact:
            return f"d = {self.distance}"
        if self.distance is None:
            return f"d > {self.lower_bound}" if self.lower_bound else "no codeword found"
        return f"{self.lower_bound} < d <= {self.distance}"

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"support": list(self.witness.support), "values": list(self.witness.values)}
            if self.witness.q == 4:
                w["pauli"] = self.witness.to_pauli()
        return {
            "algorithm": self.algorithm,
            "distance": self.distance,
            "exact": self.exact,
            "lower_bound": self.lower_bound,
            "notes": list(self.notes),
            "summary": self.summary(),
            "trials": self.trials,
            "truncated": self.truncated,
            "witness": w,
        }


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ConfigurationError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
    return max(1, jobs)


# --------------------------------------------------------------------------- code dispatch


@dataclass(frozen=True)
class Target:
    """A block code to search plus the map from its codewords to user-facing witnesses."""

    block: BlockCode
    symbol_map: tuple[int, ...] | None = None  # block symbol -> output symbol
    out_q: int | None = None

    def witness(self, c: Codeword) -> Codeword:
        if self.symbol_map is None:
            return c
        return Codeword(c.n, self.out_q, tuple(self.symbol_map[e] for e in c.entries))


def as_targets(code) -> list[Target]:
    """Block codes whose minimum distances combine to the distance of ``code``."""
    if isinstance(code, BlockCode):
        return [Target(code)]
    if isinstance(code, LinearCode):
        return [Target(code.block)]
    if isinstance(code, StabilizerCode):
        return [Target(code.block)]
    if isinstance(code, CssCode):
        # X-type logicals carry omega (index 2), Z-type carry 1
        return [Target(code.x_block, (0, 2), 4), Target(code.z_block, (0, 1), 4)]
    raise DomainError(f"cannot search a {type(code).__name__}")


def has_excluded(code) -> bool:
    return any(t.block.excluded_dim for t in as_targets(code))


def combine(results: Sequence[SearchResult], algorithm: str) -> SearchResult:
    """Distance of a code whose logical set is the union of the targets' sets."""
    if len(results) == 1:
        return results[0]
    trials = sum(r.trials for r in results)
    notes = tuple(dict.fromkeys(n for r in results for n in r.notes))

    def floor(r: SearchResult) -> float:
        # every logical vector of this target has weight > floor(r)
        if not r.truncated:
            return float("inf") if r.distance is None else r.distance - 1
        return r.lower_bound

    lower = min(floor(r) for r in results)
    found = [r for r in results if r.witness is not None]
    if not found:
        truncated = any(r.truncated for r in results)
        return SearchResult(None, None, trials, truncated, algorithm, 0 if lower == float("inf") else int(lower),
                            notes)
    best = min(found, key=lambda r: r.witness.sort_key())
    d = best.distance
    if lower >= d - 1:
        return SearchResult(d, best.witness, trials, False, algorithm, d - 1, notes)
    return SearchResult(d, best.witness, trials, True, algorithm, int(lower), notes)


def empty_result(algorithm: str, trials: int = 0) -> SearchResult:
    return SearchResult(None, None, trials, False, algorithm, 0, ("code has no non-trivial codewords",))


# --------------------------------------------------------------------------- vector helpers


class Excluder:
    """Membership test for the excluded subcode, with the basis reduced once."""

    def __init__(self, F: GaloisField, basis: np.ndarray):
        self.F = F
        if basis.shape[0]:
            R, piv = linalg.rref(F, basis)
            self.R = R[: len(piv)]
            self.piv = piv
        else:
            self.R = basis
            self.piv = []

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        if not self.piv:
            return ~X.any(axis=1)
        F = self.F
        rem = X.copy()
        for i, pc in enumerate(self.piv):
            f = F.neg[rem[:, pc]]
            if f.any():
                rem = F.add[rem, F.mul[f[:, None], self.R[i][None, :]]]
        return ~rem.any(axis=1)


def syndromes(B: BlockCode, pos: np.ndarray, sym: np.ndarray) -> np.ndarray:
    """Syndromes of sparse vectors given as ``(N, v)`` position and symbol arrays."""
    N = pos.shape[0]
    if pos.shape[1] == 0:
        return np.zeros((N, B.r), dtype=np.int64)
    return linalg.add_reduce(B.F, B.contributions[pos, sym], axis=1)


def weight_vectors(positions: Sequence[int], v: int, alphabet: int, normalize: bool,
                   chunk: int = 1 << 15):
    """All vectors of exactly ``v`` non-zero symbols on ``positions``.

    Yields ``(pos, sym)`` arrays of shape ``(N, v)``.  With ``normalize`` the
    first symbol is fixed to 1 (one representative per scalar multiple).
    """
    positions = np.asarray(positions, dtype=np.int64)
    if v > len(positions):
        return
    if v == 0:
        yield np.zeros((1, 0), np.int64), np.zeros((1, 0), np.int64)
        return
    first = [1] if normalize else range(1, alphabet)
    vals = np.array([(a,) + rest for a in first
                     for rest in itertools.product(range(1, alphabet), repeat=v - 1)], dtype=np.int64)
    nv = vals.shape[0]
    per = max(1, chunk // nv)
    combos = itertools.combinations(range(len(positions)), v)
    while True:
        block = list(itertools.islice(combos, per))
        if not block:
            return
        sup = positions[np.array(block, dtype=np.int64)]
        yield np.repeat(sup, nv, axis=0), np.tile(vals, (len(block), 1))


def scatter(B: BlockCode, pos: np.ndarray, sym: np.ndarray) -> np.ndarray:
    """Dense coordinate vectors (``N x n*u``) from sparse ``(pos, sym)``."""
    N, v = pos.shape
    u = B.u
    X = np.zeros((N, B.n * u), dtype=np.int64)
    if v:
        digits = B.symbol_digits()[sym]  # (N, v, u)
        rows = np.repeat(np.arange(N), v * u)
        cols = (pos[:, :, None] * u + np.arange(u)[None, None, :]).reshape(-1)
        X[rows, cols] = digits.reshape(-1)
    return X


def coords(positions: Sequence[int], u: int) -> np.ndarray:
    p = np.asarray(positions, dtype=np.int64)
    return (p[:, None] * u + np.arange(u)[None, :]).reshape(-1)


def pack_keys(S: np.ndarray, q: int) -> np.ndarray:
    """Injective row keys for matching syndromes (an int64 array when it fits)."""
    r = S.shape[1]
    bits = max(1, (q - 1).bit_length())
    if r * bits <= 62:
        shifts = np.arange(r, dtype=np.int64) * bits
        return (S << shifts[None, :]).sum(axis=1) if r else np.zeros(S.shape[0], np.int64)
    return np.array([row.tobytes() for row in np.ascontiguousarray(S)], dtype=object)


def match_pairs(kl: np.ndarray, kr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``(i, j)`` with ``kl[i] == kr[j]``, via sorting."""
    if kl.size == 0 or kr.size == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    if kl.dtype == object:
        table: dict = {}
        for j, k in enumerate(kr):
            table.setdefault(k, []).append(j)
        li, ri = [], []
        for i, k in enumerate(kl):
            for j in table.get(k, ()):
                li.append(i)
                ri.append(j)
        return np.array(li, np.int64), np.array(ri, np.int64)
    order = np.argsort(kr, kind="stable")
    sk = kr[order]
    lo = np.searchsorted(sk, kl, side="left")
    hi = np.searchsorted(sk, kl, side="right")
    cnt = hi - lo
    li = np.repeat(np.arange(kl.size), cnt)
    if li.size == 0:
        return li, li
    offs = np.arange(li.size) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    ri = order[np.repeat(lo, cnt) + offs]
    return li, ri


@dataclass
class Outcome:
    """Result of one work unit: the canonical best hit, trial count, skips."""

    key: tuple | None = None
    vec: np.ndarray | None = None
    trials: int = 0
    skipped: int = 0
    notes: tuple[str, ...] = ()

    def merge(self, other: Outcome) -> Outcome:
        best = self
        if other.key is not None and (self.key is None or other.key < self.key):
            best = other
        return Outcome(best.key, best.vec, self.trials + other.trials, self.skipped + other.skipped,
                       tuple(dict.fromkeys(self.notes + other.notes)))


class HitFilter:
    """Turns candidate vectors into the canonical best logical hit of weight ``<= d``."""

    def __init__(self, B: BlockCode, syndrome_mode: bool):
        self.B = B
        self.syndrome_mode = syndrome_mode
        self.excl = Excluder(B.F, B.excluded) if (B.excluded_dim and not syndrome_mode) else None
        self.scale = B.F.q > 2 and not syndrome_mode

    def best(self, X: np.ndarray, d: int) -> Outcome:
        if X.shape[0] == 0:
            return Outcome()
        w = linalg.block_weights(X, self.B.u)
        sel = (w <= d) & (w > 0) if not self.syndrome_mode else (w <= d)
        if not sel.any():
            return Outcome()
        X = X[sel]
        if self.excl is not None:
            X = X[~self.excl(X)]
            if X.shape[0] == 0:
                return Outcome()
        if self.scale:
            X = np.array([self.B.normalize(x) for x in X])
        keys = [self.B.to_codeword(x).sort_key() for x in X]
        i = min(range(len(keys)), key=keys.__getitem__)
        return Outcome(keys[i], X[i].copy())


# --------------------------------------------------------------------------- execution

_STATE = None


def _init_worker(state):
    global _STATE
    _STATE = state


def _map_chunk(args):
    fn, d, units = args
    return [fn(_STATE, d, unit) for unit in units]


def _run_chunk(args):
    fn, d, units = args
    out = Outcome()
    for unit in units:
        out = out.merge(fn(_STATE, d, unit))
    return out


class Executor:
    """Runs ``fn(state, d, unit)`` over work units, serially or in a process pool.

    Outcomes are merged by canonical key, so the result does not depend on
    the number of jobs.
    """

    def __init__(self, state, jobs: int | None):
        self.state = state
        self.jobs = default_jobs() if jobs is None else int(jobs)
        if self.jobs < 1:
            raise ConfigurationError("jobs must be at least 1")
        self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def _ensure_pool(self):
        if self._pool is None:
            self._pool = ProcessPoolExecutor(max_workers=self.jobs, initializer=_init_worker,
                                             initargs=(self.state,))
        return self._pool

    def map(self, fn: Callable, d: int, units: Sequence) -> list:
        """``[fn(state, d, unit) for unit in units]``, in order."""
        units = list(units)
        if self.jobs == 1 or len(units) < 2:
            return [fn(self.state, d, unit) for unit in units]
        nchunks = min(len(units), 4 * self.jobs)
        size = -(-len(units) // nchunks)
        chunks = [units[i:i + size] for i in range(0, len(units), size)]
        out = []
        for part in self._ensure_pool().map(_map_chunk, [(fn, d, c) for c in chunks]):
            out.extend(part)
        return out

    def run(self, fn: Callable, d: int, units: Sequence) -> Outcome:
        units = list(units)
        if self.jobs == 1 or len(units) < 2:
            out = Outcome()
            for unit in units:
                out = out.merge(fn(self.state, d, unit))
            return out
        nchunks = min(len(units), 4 * self.jobs)
        chunks = [units[i::nchunks] for i in range(nchunks)]
        out = Outcome()
        for part in self._ensure_pool().map(_run_chunk, [(fn, d, c) for c in chunks]):
            out = out.merge(part)
        return out


@dataclass
class LevelLoop:
    """Trial weights ``d = 1, 2, ...`` with a per-level work list.

    ``units(d)`` returns the work units of level ``d``; every hit of weight
    ``<= d`` found at level ``d`` is a genuine logical vector, and an engine
    guarantees that a level with no hit rules out weight ``d`` unless units
    were skipped.
    """

    algorithm: str
    B: BlockCode
    budget: SearchBudget
    notes: list[str] = field(default_factory=list)

    def run(self, executor: Executor, fn: Callable, units: Callable[[int], Sequence],
            dmax: int | None = None) -> tuple[Outcome, int, bool]:
        """Returns ``(outcome, last_level, complete)``."""
        start = time.monotonic()
        limit = min(self.budget.max_weight or self.B.n, self.B.n) if dmax is None else dmax
        total = Outcome()
        skipped_any = False
        last = 0
        for d in range(1, limit + 1):
            out = executor.run(fn, d, units(d))
            total = Outcome(out.key, out.vec, total.trials + out.trials, total.skipped + out.skipped,
                            tuple(dict.fromkeys(total.notes + out.notes)))
            skipped_any = skipped_any or out.skipped > 0
            last = d
            if out.key is not None:
                return total, d, not skipped_any
            if self.budget.max_candidates is not None and total.trials >= self.budget.max_candidates:
                self.notes.append(f"candidate budget exhausted after weight {d}")
                return total, d, False
            if self.budget.wall_clock is not None and time.monotonic() - start > self.budget.wall_clock:
                self.notes.append(f"wall-clock budget exhausted after weight {d}")
                return total, d, False
        return total, last, not skipped_any and last == self.B.n

    def result(self, target: Target, outcome: Outcome, last: int, complete: bool) -> SearchResult:
        notes = tuple(dict.fromkeys(self.notes + list(outcome.notes)))
        if outcome.key is None:
            if complete:
                return empty_result(self.algorithm, outcome.trials)
            lower = last if outcome.skipped == 0 else 0
            return SearchResult(None, None, outcome.trials, True, self.algorithm, lower, notes)
        c = target.witness(self.B.to_codeword(outcome.vec))
        d = c.weight
        if complete:
            return SearchResult(d, c, outcome.trials, False, self.algorithm, d - 1, notes)
        return SearchResult(d, c, outcome.trials, True, self.algorithm, 0, notes)
