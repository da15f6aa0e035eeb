"""Seeded samplers for regular LDPC ensembles and random linear/stabilizer codes.

Every sampler draws from ``numpy.random.Generator(Philox(seed))`` so a spec
and a seed fully determine the output.  The generator id is written into
the metadata sidecar next to each sampled file.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .codes import LinearCode, ParityCheckMatrix, StabilizerCode
from .errors import ConfigurationError, SamplingError
from .field import QuaternaryVector, gf

GENERATOR_ID = "philox4x64-10"
KINDS = ("A", "B", "random-linear", "random-stabilizer")
RETRY_BUDGET = 1000


@dataclass(frozen=True)
class EnsembleSpec:
    """Sampler input.  ``l``/``m`` are the column/row weights of the LDPC kinds,
    ``k`` the dimension of the random kinds."""

    kind: str
    n: int
    l: int | None = None
    m: int | None = None
    q: int = 2
    k: int | None = None
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        if self.n <= 0:
            raise ConfigurationError("n must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        if self.kind in ("A", "B"):
            gf(self.q)
            if self.l is None or self.m is None:
                raise ConfigurationError(f"ensemble {self.kind} needs column weight l and row weight m")
            if not 3 <= self.l <= self.m:
                raise ConfigurationError("LDPC ensembles need m >= l >= 3")
            if self.m > self.n:
                raise ConfigurationError("row weight m exceeds n")
            if (self.l * self.n) % self.m:
                raise ConfigurationError(f"l*n = {self.l * self.n} is not divisible by m = {self.m}")
            if self.kind == "B" and self.n % self.m:
                raise ConfigurationError(f"ensemble B needs m | n so that l | r (n={self.n}, m={self.m})")
        elif self.kind == "random-linear":
            gf(self.q)
            if self.k is None or not 0 <= self.k <= self.n:
                raise ConfigurationError("random-linear needs 0 <= k <= n")
        else:
            if self.q not in (2, 4):
                raise ConfigurationError("random-stabilizer codes are qubit codes (q = 2 or 4)")
            if self.k is None or not 0 <= self.k < self.n:
                raise ConfigurationError("random-stabilizer needs 0 <= k < n")

    @property
    def r(self) -> int:
        if self.kind in ("A", "B"):
            return self.l * self.n // self.m
        return self.n - (self.k or 0)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def _coefficients(rng: np.random.Generator, count: int, q: int) -> np.ndarray:
    if q == 2:
        return np.ones(count, dtype=np.int64)
    return rng.integers(1, q, size=count, dtype=np.int64)


def _sample_a(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    """Exact-weight 0/1 pattern by sequential stub pairing.

    Columns are processed in order; each picks ``l`` distinct rows with
    probability proportional to the rows' remaining stubs.  A dead end
    (fewer than ``l`` rows with free stubs) restarts the draw.
    """
    n, l, m, r = spec.n, spec.l, spec.m, spec.r
    for _ in range(RETRY_BUDGET):
        cap = np.full(r, m, dtype=np.int64)
        M = np.zeros((r, n), dtype=np.int64)
        for j in range(n):
            w = cap.astype(float)
            if np.count_nonzero(w) < l:
                break
            rows = []
            for _t in range(l):
                p = w / w.sum()
                i = int(rng.choice(r, p=p))
                rows.append(i)
                w[i] = 0.0
            M[rows, j] = 1
            cap[rows] -= 1
        else:
            return M
    raise SamplingError(f"A({l},{m}) sampler exceeded {RETRY_BUDGET} restarts at n={n}")


def _sample_b(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    n, l, m = spec.n, spec.l, spec.m
    b = n // m
    base = np.tile(np.eye(b, dtype=np.int64), (1, m))
    blocks = [base[:, rng.permutation(n)] for _ in range(l)]
    return np.vstack(blocks)


def _random_stabilizer(spec: EnsembleSpec, rng: np.random.Generator) -> StabilizerCode:
    """Grow a self-orthogonal generator set one uniform vector at a time.

    Each new generator is uniform over the symplectic complement of the
    current span, rejected if it already lies in the span.
    """
    F = gf(2)
    n, s = spec.n, spec.n - spec.k
    rows = np.zeros((0, 2 * n), dtype=np.int64)
    while rows.shape[0] < s:
        checks = rows.reshape(-1, n, 2)[:, :, ::-1].reshape(-1, 2 * n)
        K = linalg.nullspace(F, checks, 2 * n)
        for _ in range(RETRY_BUDGET):
            coeffs = rng.integers(0, 2, size=K.shape[0], dtype=np.int64)
            vec = linalg.matmul(F, coeffs, K)
            if not linalg.in_span(F, rows, vec)[0]:
                break
        else:
            raise SamplingError("random-stabilizer sampler exceeded its retry budget")
        rows = np.vstack([rows, vec])
    gens = []
    for row in rows:
        pairs = row.reshape(n, 2)
        u = sum(1 << j for j in range(n) if pairs[j, 0])
        v = sum(1 << j for j in range(n) if pairs[j, 1])
        gens.append(QuaternaryVector(n, u, v))
    return StabilizerCode(gens, n)


def sample_ensemble(spec: EnsembleSpec) -> LinearCode | StabilizerCode:
    """Draw one code from the ensemble described by ``spec``."""
    spec.validate()
    rng = make_rng(spec.seed)
    if spec.kind == "random-stabilizer":
        return _random_stabilizer(spec, rng)
    if spec.kind == "random-linear":
        M = rng.integers(0, spec.q, size=(spec.n - spec.k, spec.n), dtype=np.int64)
        return LinearCode(ParityCheckMatrix.from_dense(M, spec.q))
    M = _sample_a(spec, rng) if spec.kind == "A" else _sample_b(spec, rng)
    if not ((M.sum(axis=0) == spec.l).all() and (M.sum(axis=1) == spec.m).all()):
        raise SamplingError("sampled matrix violates the row/column weights")
    nz = np.nonzero(M)
    M[nz] = _coefficients(rng, nz[0].size, spec.q)
    return LinearCode(ParityCheckMatrix.from_dense(M, spec.q))


def metadata(spec: EnsembleSpec, fmt: str) -> dict:
    return {"spec": spec.to_dict(), "seed": spec.seed, "generator": GENERATOR_ID, "format": fmt}


def write_sample(spec: EnsembleSpec, out: str | Path) -> tuple[Path, Path]:
    """Sample and write the code plus a ``.json`` metadata sidecar.  Returns both paths."""
    from .formats import format_alist, format_pauli

    code = sample_ensemble(spec)
    out = Path(out)
    if isinstance(code, StabilizerCode):
        out.write_text(format_pauli(code, f"random-stabilizer n={spec.n} k={spec.k} seed={spec.seed}"))
        fmt = "pauli"
    else:
        out.write_text(format_alist(code.H))
        fmt = "alist"
    side = out.with_name(out.name + ".json")
    side.write_text(json.dumps(metadata(spec, fmt), indent=2, sort_keys=True) + "\n")
    return out, side
