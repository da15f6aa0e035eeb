"""Dense linear algebra over GF(q) on int64 arrays of field indices."""

from __future__ import annotations

import itertools

import numpy as np

from . import kernels
from .field import GaloisField


def asmatrix(M, ncols: int | None = None) -> np.ndarray:
    A = np.ascontiguousarray(np.asarray(M, dtype=np.int64))
    if A.ndim == 1:
        A = A.reshape(0 if A.size == 0 else 1, -1) if ncols is None else A.reshape(-1, ncols)
    return A


def matmul(F: GaloisField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A @ B`` over GF(q); both operands may be batched along leading axes of A."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.is_prime:
        return (A @ B) % F.q
    if B.ndim == 1:
        return matmul(F, A, B[:, None])[..., 0]
    out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    for i in range(A.shape[-1]):
        out = F.add[out, F.mul[A[..., i, None], B[i]]]
    return out


def add_reduce(F: GaloisField, X: np.ndarray, axis: int) -> np.ndarray:
    """Field sum of ``X`` along ``axis``."""
    X = np.moveaxis(np.asarray(X, dtype=np.int64), axis, 0)
    if F.is_prime:
        return X.sum(axis=0) % F.q
    if F.p == 2:
        return np.bitwise_xor.reduce(X, axis=0) if X.shape[0] else np.zeros(X.shape[1:], np.int64)
    out = np.zeros(X.shape[1:], dtype=np.int64)
    for x in X:
        out = F.add[out, x]
    return out


def block_weights(X: np.ndarray, u: int) -> np.ndarray:
    """Number of non-zero length-``u`` blocks in each row of ``X``."""
    X = np.asarray(X)
    n = X.shape[-1] // u
    return X.reshape(X.shape[:-1] + (n, u)).any(axis=-1).sum(axis=-1)


def rref(F: GaloisField, M, pivot_cols: int = -1) -> tuple[np.ndarray, list[int]]:
    R = np.array(M, dtype=np.int64, copy=True, order="C")
    if R.ndim != 2:
        R = asmatrix(R)
    if R.size == 0:
        return R, []
    piv = kernels.rref_inplace(R, F.add, F.mul, F.inv, F.neg, pivot_cols)
    return R, list(piv)


def rank(F: GaloisField, M) -> int:
    return len(rref(F, M)[1])


def nullspace(F: GaloisField, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        M = M.reshape(-1, ncols if ncols is not None else M.size)
    c = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(c, dtype=np.int64)
    R, piv = rref(F, M)
    free = [j for j in range(c) if j not in set(piv)]
    K = np.zeros((len(free), c), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, pc in enumerate(piv):
            K[t, pc] = F.neg[R[i, f]]
    return K


def row_basis(F: GaloisField, M) -> np.ndarray:
    R, piv = rref(F, M)
    return R[: len(piv)].copy()


def in_span(F: GaloisField, basis: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Boolean per row of ``X``: does it lie in the row space of ``basis``?"""
    X = np.atleast_2d(np.asarray(X, dtype=np.int64))
    basis = np.asarray(basis, dtype=np.int64)
    if basis.size == 0:
        return ~X.any(axis=1)
    R, piv = rref(F, basis)
    R = R[: len(piv)]
    # eliminate the pivot coordinates of each row, remainder must vanish
    rem = X.copy()
    for i, pc in enumerate(piv):
        f = F.neg[rem[:, pc]]
        rem = F.add[rem, F.mul[f[:, None], R[i][None, :]]]
    return ~rem.any(axis=1)


def combinations_of_rows(F: GaloisField, B: np.ndarray) -> np.ndarray:
    """All ``q**b`` linear combinations of the rows of ``B`` (zero first)."""
    b, c = B.shape
    coeffs = np.array(list(itertools.product(range(F.q), repeat=b)), dtype=np.int64)
    if b == 0:
        return np.zeros((1, c), dtype=np.int64)
    return matmul(F, coeffs[:, ::-1], B)


class LinearSolver:
    """Solve ``A x = y`` for many right-hand sides ``y``.

    Built once from ``rref([A | I])``; holds the transform ``E`` with
    ``E A = R``, the pivots, and a kernel basis of ``A``.
    """

    def __init__(self, F: GaloisField, A: np.ndarray):
        A = np.asarray(A, dtype=np.int64)
        self.F = F
        r, c = A.shape
        self.rows, self.cols = r, c
        aug = np.concatenate([A, np.eye(r, dtype=np.int64)], axis=1)
        R, piv = rref(F, aug, pivot_cols=c)
        self.pivots = piv
        self.rank = len(piv)
        self.R = R[:, :c]
        self.E = R[:, c:]
        free = [j for j in range(c) if j not in set(piv)]
        self.free = free
        K = np.zeros((len(free), c), dtype=np.int64)
        for t, f in enumerate(free):
            K[t, f] = 1
            for i, pc in enumerate(piv):
                K[t, pc] = F.neg[self.R[i, f]]
        self.kernel = K

    @property
    def corank(self) -> int:
        return len(self.free)

    def solve(self, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Particular solutions for each row of ``Y`` and a consistency mask."""
        Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
        T = matmul(self.F, Y, self.E.T) if self.rows else np.zeros((Y.shape[0], 0), np.int64)
        ok = ~T[:, self.rank:].any(axis=1)
        X = np.zeros((Y.shape[0], self.cols), dtype=np.int64)
        if self.rank:
            X[:, self.pivots] = T[:, : self.rank]
        return X, ok
