from __future__ import annotations

import hashlib
import json

import numpy as np
import pytest

from distver import ConfigurationError, LinearCode, StabilizerCode, gaussian_eliminate, validate_stabilizer
from distver.ensembles import GENERATOR_ID, EnsembleSpec, make_rng, sample_ensemble, write_sample

# sha256 of the int64 parity-check bytes, frozen when the sampler was written
PINNED_RANDOM_LINEAR = {
    1: "8c241f6f92d624b55a518f9f06fc96e32a60f1e6b9d7c11a0a7186129055baea",
    2: "65587b8c8f0b19ec9e98271ac4653d7ebbce2258a6c283cc03641168d3f69b00",
    3: "9a36ffd71b1ccc1fc0ed35e8b53527f41be1ba652defcdd4d789e14d3d8cd4ce",
}


def _digest(code: LinearCode) -> str:
    return hashlib.sha256(np.ascontiguousarray(code.H.dense(), dtype=np.int64).tobytes()).hexdigest()


def test_b_structure():
    code = sample_ensemble(EnsembleSpec("B", 12, 3, 6, seed=4))
    H = code.H.dense()
    assert H.shape == (6, 12)
    assert (H.sum(axis=0) == 3).all() and (H.sum(axis=1) == 6).all()
    for b in range(3):
        block = H[2 * b:2 * b + 2]
        # a column permutation of six stacked 2x2 identities: one 1 per column
        assert (block.sum(axis=0) == 1).all()
        assert (block.sum(axis=1) == 6).all()


@pytest.mark.parametrize("kind", ["A", "B"])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_ldpc_weights(kind, q):
    for seed in range(10):
        code = sample_ensemble(EnsembleSpec(kind, 24, 3, 6, q=q, seed=seed))
        nz = code.H.dense() != 0
        assert (nz.sum(axis=0) == 3).all() and (nz.sum(axis=1) == 6).all()


def test_pinned_random_linear():
    digests = {s: _digest(sample_ensemble(EnsembleSpec("random-linear", 10, q=2, k=5, seed=s))) for s in (1, 2, 3)}
    assert digests == PINNED_RANDOM_LINEAR


def test_determinism():
    for spec in (EnsembleSpec("A", 30, 3, 6, seed=9), EnsembleSpec("B", 30, 3, 6, seed=9),
                 EnsembleSpec("random-linear", 12, q=4, k=5, seed=9)):
        a, b = sample_ensemble(spec), sample_ensemble(spec)
        assert np.array_equal(a.H.dense(), b.H.dense())
    s = EnsembleSpec("random-stabilizer", 8, k=2, seed=9)
    assert sample_ensemble(s).to_pauli_lines() == sample_ensemble(s).to_pauli_lines()
    assert make_rng(5).integers(0, 2**62) == make_rng(5).integers(0, 2**62)


def test_random_stabilizer_is_valid():
    for seed in range(10):
        S = sample_ensemble(EnsembleSpec("random-stabilizer", 9, k=3, seed=seed))
        assert isinstance(S, StabilizerCode)
        report = validate_stabilizer(S)
        assert (report.n, report.k, report.generators) == (9, 3, 6)


@pytest.mark.parametrize(
    "spec",
    [
        EnsembleSpec("A", 13, 3, 6),
        EnsembleSpec("B", 15, 3, 6, seed=1),
        EnsembleSpec("A", 12, 2, 6),
        EnsembleSpec("A", 12, 6, 3),
        EnsembleSpec("random-linear", 10, q=6, k=5),
        EnsembleSpec("random-linear", 10, k=11),
        EnsembleSpec("random-stabilizer", 5, q=3, k=1),
        EnsembleSpec("C", 10),
        EnsembleSpec("B", 12, 3, 6, seed=-1),
    ],
)
def test_infeasible_specs(spec):
    with pytest.raises(ConfigurationError):
        sample_ensemble(spec)


def test_write_sample(tmp_path):
    spec = EnsembleSpec("B", 12, 3, 6, seed=7)
    code_path, side = write_sample(spec, tmp_path / "b.alist")
    meta = json.loads(side.read_text())
    assert meta["generator"] == GENERATOR_ID and meta["seed"] == 7 and meta["format"] == "alist"
    assert meta["spec"]["kind"] == "B"
    first = code_path.read_bytes()
    write_sample(spec, tmp_path / "b.alist")
    assert code_path.read_bytes() == first


def test_erasure_smoke():
    """Well below the erasure threshold almost every code recovers; above it many fail."""
    n, samples = 48, 200
    ok_low = fail_high = 0
    for seed in range(samples):
        code = sample_ensemble(EnsembleSpec("A", n, 3, 6, seed=seed))
        rng = np.random.default_rng(10_000 + seed)
        low = rng.choice(n, size=int(0.40 * n), replace=False)
        high = rng.choice(n, size=int(0.55 * n), replace=False)
        ok_low += gaussian_eliminate(code.H, low).corank == 0
        fail_high += gaussian_eliminate(code.H, high).corank > 0
    assert ok_low >= 0.8 * samples
    assert fail_high >= 0.2 * samples
