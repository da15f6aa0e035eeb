"""Seeded code families shared by the oracle and acceptance tests."""

from __future__ import annotations

import itertools

import numpy as np

from distver import CssCode, LinearCode, StabilizerCode
from distver.ensembles import EnsembleSpec, sample_ensemble
from distver.field import QuaternaryVector, gf, trace_inner_product
from distver.linalg import matmul, rank

FIVE_QUBIT = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
STEANE = ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]


def hamming_matrix(r: int) -> np.ndarray:
    """Columns are the binary expansions of 1 .. 2^r - 1."""
    n = 2**r - 1
    return np.array([[(j + 1) >> i & 1 for j in range(n)] for i in range(r)], dtype=np.int64)


def random_invertible(rng: np.random.Generator, k: int) -> np.ndarray:
    F = gf(2)
    while True:
        A = rng.integers(0, 2, size=(k, k), dtype=np.int64)
        if rank(F, A) == k:
            return A


def random_linear(seed: int) -> LinearCode:
    q = (2, 3, 4)[seed % 3]
    n = {2: (12, 14, 16, 18, 20), 3: (10, 11, 12, 13, 14), 4: (9, 10, 11, 12, 13)}[q][(seed // 3) % 5]
    k = n // 2 if q == 2 else min(n // 2, 7 if q == 3 else 6)
    return sample_ensemble(EnsembleSpec("random-linear", n, q=q, k=k, seed=seed))


def ldpc(seed: int) -> LinearCode:
    kind = "AB"[seed % 2]
    n = (12, 18, 24, 30, 36)[(seed // 2) % 5]
    return sample_ensemble(EnsembleSpec(kind, n, 3, 6, seed=seed))


def css_hamming(seed: int) -> CssCode:
    """[[7,1,3]] or [[15,7,3]] with permuted qubits and random row bases for Gx and Gz."""
    rng = np.random.default_rng(seed)
    H = hamming_matrix(3 if seed % 2 == 0 else 4)
    F = gf(2)
    perm = rng.permutation(H.shape[1])
    Gx = matmul(F, random_invertible(rng, H.shape[0]), H)[:, perm]
    Gz = matmul(F, random_invertible(rng, H.shape[0]), H)[:, perm]
    return CssCode.from_dense(Gx, Gz)


def _clifford_maps(rng: np.random.Generator, n: int) -> list[dict[str, str]]:
    # single-qubit Cliffords act on {X, Y, Z} as all 6 permutations (up to sign)
    perms = list(itertools.permutations("XYZ"))
    out = []
    for _ in range(n):
        p = perms[rng.integers(len(perms))]
        out.append({"I": "I", "X": p[0], "Y": p[1], "Z": p[2]})
    return out


def small_stabilizer(seed: int) -> StabilizerCode:
    """Five-qubit or Steane code with a qubit permutation, a generator basis change and local Cliffords."""
    rng = np.random.default_rng(seed)
    base = FIVE_QUBIT if seed % 2 == 0 else STEANE
    n = len(base[0])
    perm = rng.permutation(n)
    maps = _clifford_maps(rng, n)
    gens = ["".join(maps[j][g[perm[j]]] for j in range(n)) for g in base]
    vecs = [QuaternaryVector.from_pauli(g) for g in gens]
    A = random_invertible(rng, len(vecs))
    mixed = []
    for row in A:
        acc = QuaternaryVector(n)
        for a, v in zip(row, vecs):
            if a:
                acc = acc + v
        mixed.append(acc)
    return StabilizerCode(mixed, n)


FAMILIES = {
    "random-linear": random_linear,
    "ldpc-A/B(3,6)": ldpc,
    "css-hamming": css_hamming,
    "five-qubit/steane": small_stabilizer,
}


def witness_is_valid(code, witness, d: int) -> bool:
    """Zero syndrome, weight ``d`` and, for quantum codes, a non-trivial logical operator."""
    if witness is None or witness.weight != d:
        return False
    if isinstance(code, LinearCode):
        return code.contains(witness)
    S = code.to_stabilizer() if isinstance(code, CssCode) else code
    e = witness.to_quaternary()
    if any(trace_inner_product(e, g) for g in S.generators):
        return False
    return not S.contains_stabilizer(e)
