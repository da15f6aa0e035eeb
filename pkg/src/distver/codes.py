"""Classical linear, CSS and stabilizer codes, and the operations the search
engines are built from (syndromes, elimination, shortening, erasure completion,
membership in the stabilizer group).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import linalg
from .errors import DomainError, ValidationError
from .field import GaloisField, QuaternaryVector, gf, trace_inner_product

DEFAULT_COMPLETION_LIMIT = 1 << 20


class ParityCheckMatrix:
    """An ``r x n`` matrix over GF(q) stored as sparse rows.

    ``rows[i]`` is a tuple of ``(column, coefficient)`` pairs with strictly
    increasing columns and non-zero coefficients.  The dense mirror and the
    packed bit planes are built on first use.
    """

    def __init__(self, q: int, n: int, rows: Iterable[Iterable[tuple[int, int]]]):
        gf(q)
        self.q = q
        self.n = n
        clean = []
        for i, row in enumerate(rows):
            row = tuple((int(c), int(v)) for c, v in row)
            cols = [c for c, _ in row]
            if any(b <= a for a, b in zip(cols, cols[1:])):
                raise DomainError(f"row {i}: column indices must be strictly increasing")
            if any(not 0 <= c < n for c in cols):
                raise DomainError(f"row {i}: column index out of range")
            if any(not 0 < v < q for _, v in row):
                raise DomainError(f"row {i}: coefficients must be non-zero elements of GF({q})")
            clean.append(row)
        self.rows: tuple[tuple[tuple[int, int], ...], ...] = tuple(clean)
        self.r = len(self.rows)

    @classmethod
    def from_dense(cls, M, q: int = 2) -> ParityCheckMatrix:
        M = np.asarray(M, dtype=np.int64)
        if M.ndim != 2:
            raise DomainError("expected a 2-D matrix")
        if M.size and (M.min() < 0 or M.max() >= q):
            raise DomainError(f"entries must lie in 0..{q - 1}")
        rows = [[(int(j), int(M[i, j])) for j in np.flatnonzero(M[i])] for i in range(M.shape[0])]
        return cls(q, M.shape[1], rows)

    @functools.cached_property
    def _dense(self) -> np.ndarray:
        D = np.zeros((self.r, self.n), dtype=np.int64)
        for i, row in enumerate(self.rows):
            for c, v in row:
                D[i, c] = v
        D.setflags(write=False)
        return D

    def dense(self) -> np.ndarray:
        return self._dense

    @functools.cached_property
    def packed(self) -> np.ndarray:
        """Bit planes ``(planes, r, words)`` of uint64; plane ``b`` holds bit ``b`` of each entry."""
        planes = max(1, (self.q - 1).bit_length())
        words = (self.n + 63) // 64
        P = np.zeros((planes, self.r, words), dtype=np.uint64)
        for i, row in enumerate(self.rows):
            for c, v in row:
                for b in range(planes):
                    if (v >> b) & 1:
                        P[b, i, c // 64] |= np.uint64(1) << np.uint64(c % 64)
        P.setflags(write=False)
        return P

    @property
    def field(self) -> GaloisField:
        return gf(self.q)

    def column_weights(self) -> np.ndarray:
        return (self._dense != 0).sum(axis=0)

    def row_weights(self) -> np.ndarray:
        return np.array([len(r) for r in self.rows], dtype=np.int64)

    def restrict(self, cols: Sequence[int]) -> ParityCheckMatrix:
        return ParityCheckMatrix.from_dense(self._dense[:, list(cols)], self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParityCheckMatrix)
            and (self.q, self.n, self.rows) == (other.q, other.n, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.rows))

    def __repr__(self) -> str:
        return f"ParityCheckMatrix(q={self.q}, r={self.r}, n={self.n})"


@dataclass(frozen=True)
class Codeword:
    n: int
    q: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n:
            raise DomainError("entries length differs from n")

    @classmethod
    def from_entries(cls, entries: Sequence[int], q: int) -> Codeword:
        return cls(len(entries), q, tuple(int(e) for e in entries))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, e in enumerate(self.entries) if e)

    @property
    def weight(self) -> int:
        return sum(1 for e in self.entries if e)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(e for e in self.entries if e)

    def sort_key(self) -> tuple:
        """Canonical order: weight, then support, then values on the support."""
        return (self.weight, self.support, self.values)

    def to_quaternary(self) -> QuaternaryVector:
        if self.q != 4:
            raise DomainError("only GF(4) codewords map to quaternary vectors")
        return QuaternaryVector.from_symbols(self.entries)

    def to_pauli(self) -> str:
        return self.to_quaternary().to_pauli()


class BlockCode:
    """A GF(q)-linear code whose symbols are blocks of ``u`` field coordinates.

    This is the common currency of the search engines.  A classical code over
    GF(q) has ``u = 1``.  The dual ``C^perp`` of a qubit stabilizer code is a
    GF(2)-linear code with ``u = 2`` (a symbol is the pair ``(u_j, v_j)``, its
    GF(4) index ``u_j + 2 v_j``).  ``excluded`` spans a subcode whose
    elements are not counted for the distance (the stabilizer group ``C``).
    """

    def __init__(self, field: GaloisField, u: int, n: int, H, excluded=None, label: str = ""):
        self.F = field
        self.u = u
        self.n = n
        self.H = linalg.asmatrix(H, n * u)
        if self.H.shape[1] != n * u:
            raise DomainError("parity-check width does not match n*u")
        self.H.setflags(write=False)
        ex = np.zeros((0, n * u), dtype=np.int64) if excluded is None else linalg.asmatrix(excluded, n * u)
        self.excluded = linalg.row_basis(field, ex) if ex.size else ex
        self.excluded.setflags(write=False)
        self.label = label

    @property
    def alphabet(self) -> int:
        return self.F.q**self.u

    @property
    def r(self) -> int:
        return self.H.shape[0]

    @functools.cached_property
    def rank(self) -> int:
        return linalg.rank(self.F, self.H)

    @functools.cached_property
    def generator(self) -> np.ndarray:
        """Basis of the code; rows spanning ``excluded`` come first."""
        K = linalg.nullspace(self.F, self.H, self.n * self.u)
        if not self.excluded.shape[0]:
            return K
        basis = [row for row in self.excluded]
        cur = np.array(basis, dtype=np.int64)
        for row in K:
            trial = np.vstack([cur, row])
            if linalg.rank(self.F, trial) > cur.shape[0]:
                cur = trial
        return cur

    @property
    def dim(self) -> int:
        return self.n * self.u - self.rank

    @property
    def excluded_dim(self) -> int:
        return self.excluded.shape[0]

    @functools.cached_property
    def contributions(self) -> np.ndarray:
        """``(n, alphabet, r)`` table: syndrome of symbol ``s`` placed at position ``j``."""
        S = self.alphabet
        digits = np.array([[(s // self.F.q**k) % self.F.q for k in range(self.u)] for s in range(S)],
                          dtype=np.int64)
        out = np.zeros((self.n, S, self.r), dtype=np.int64)
        for j in range(self.n):
            Hj = self.H[:, j * self.u:(j + 1) * self.u]
            out[j] = linalg.matmul(self.F, digits, Hj.T)
        out.setflags(write=False)
        return out

    def symbol_digits(self) -> np.ndarray:
        S = self.alphabet
        return np.array([[(s // self.F.q**k) % self.F.q for k in range(self.u)] for s in range(S)],
                        dtype=np.int64)

    def coords(self, entries: Sequence[int]) -> np.ndarray:
        """Field coordinates (length ``n*u``) of a symbol vector."""
        return self.symbol_digits()[np.asarray(entries, dtype=np.int64)].reshape(-1)

    def to_codeword(self, vec: np.ndarray) -> Codeword:
        v = np.asarray(vec, dtype=np.int64).reshape(self.n, self.u)
        powers = self.F.q ** np.arange(self.u)
        return Codeword(self.n, self.alphabet, tuple(int(x) for x in (v * powers).sum(axis=1)))

    def syndrome(self, vec: np.ndarray) -> np.ndarray:
        return linalg.matmul(self.F, self.H, np.asarray(vec, dtype=np.int64))

    def weight(self, vec: np.ndarray) -> int:
        return int(linalg.block_weights(vec, self.u))

    def is_excluded(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.atleast_2d(vecs)
        if not self.excluded_dim:
            return ~vecs.any(axis=1)
        return linalg.in_span(self.F, self.excluded, vecs)

    def normalize(self, vec: np.ndarray) -> np.ndarray:
        """Scale so the first non-zero coordinate is 1 (a no-op over GF(2))."""
        nz = np.flatnonzero(vec)
        if not nz.size or vec[nz[0]] == 1:
            return vec
        return self.F.mul[self.F.inv[vec[nz[0]]], vec]

    def __repr__(self) -> str:
        return f"BlockCode(q={self.F.q}, u={self.u}, n={self.n}, r={self.r}{', ' + self.label if self.label else ''})"


class LinearCode:
    """``C = {c in GF(q)^n : H c = 0}``."""

    def __init__(self, H: ParityCheckMatrix):
        self.H = H

    @classmethod
    def from_dense(cls, M, q: int = 2) -> LinearCode:
        return cls(ParityCheckMatrix.from_dense(M, q))

    @property
    def q(self) -> int:
        return self.H.q

    @property
    def n(self) -> int:
        return self.H.n

    @functools.cached_property
    def rank(self) -> int:
        return linalg.rank(self.H.field, self.H.dense())

    @property
    def k(self) -> int:
        return self.n - self.rank

    @functools.cached_property
    def block(self) -> BlockCode:
        return BlockCode(self.H.field, 1, self.n, self.H.dense(), label="classical")

    def generator_matrix(self) -> np.ndarray:
        return self.block.generator

    def contains(self, c: Codeword | Sequence[int]) -> bool:
        return not syndrome(self.H, c).any()

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q})"


def _symplectic_rows(gens: Sequence[QuaternaryVector]) -> np.ndarray:
    """Generators in interleaved coordinates ``(u_0, v_0, u_1, v_1, ...)``."""
    n = gens[0].n if gens else 0
    M = np.zeros((len(gens), 2 * n), dtype=np.int64)
    for i, g in enumerate(gens):
        for j in range(n):
            M[i, 2 * j] = (g.u >> j) & 1
            M[i, 2 * j + 1] = (g.v >> j) & 1
    return M


class StabilizerCode:
    """Qubit stabilizer code given by generators of the additive code ``C``.

    The distance is the minimum weight of ``C^perp \\ C`` where ``C^perp`` is
    the symplectic (trace) dual.  Internally everything is in binary
    symplectic form; the GF(4) view is for presentation.
    """

    def __init__(self, generators: Sequence[QuaternaryVector | str], n: int | None = None):
        gens = [QuaternaryVector.from_pauli(g) if isinstance(g, str) else g for g in generators]
        if n is None:
            if not gens:
                raise DomainError("cannot infer n from an empty generator list")
            n = gens[0].n
        if any(g.n != n for g in gens):
            raise DomainError("generators have different lengths")
        self.n = n
        self.generators: tuple[QuaternaryVector, ...] = tuple(gens)

    @functools.cached_property
    def symplectic(self) -> np.ndarray:
        return _symplectic_rows(self.generators) if self.generators else np.zeros((0, 2 * self.n), np.int64)

    @functools.cached_property
    def rank(self) -> int:
        return linalg.rank(gf(2), self.symplectic)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @functools.cached_property
    def block(self) -> BlockCode:
        S = self.symplectic
        # checks of C^perp: <e, g> = sum u_e v_g + v_e u_g, so swap each pair
        H = S.reshape(S.shape[0], self.n, 2)[:, :, ::-1].reshape(S.shape[0], 2 * self.n)
        return BlockCode(gf(2), 2, self.n, H, excluded=S, label="stabilizer")

    @functools.cached_property
    def dual_basis(self) -> np.ndarray:
        """Basis of ``C^perp`` (symplectic coordinates); the first rows span ``C``."""
        return self.block.generator

    def contains_stabilizer(self, e: QuaternaryVector) -> bool:
        v = _symplectic_rows([e])
        return bool(linalg.in_span(gf(2), self.symplectic, v)[0])

    def commutes_with_all(self, e: QuaternaryVector) -> bool:
        return all(trace_inner_product(e, g) == 0 for g in self.generators)

    def to_pauli_lines(self) -> list[str]:
        return [g.to_pauli() for g in self.generators]

    def __repr__(self) -> str:
        return f"StabilizerCode([[{self.n},{self.k}]])"


class CssCode:
    """CSS code from binary ``Gx`` (X-type checks) and ``Gz`` (Z-type checks)."""

    def __init__(self, Gx: ParityCheckMatrix, Gz: ParityCheckMatrix):
        if Gx.q != 2 or Gz.q != 2:
            raise DomainError("CSS codes are binary here")
        if Gx.n != Gz.n:
            raise DomainError("Gx and Gz have different lengths")
        self.Gx = Gx
        self.Gz = Gz
        self.n = Gx.n

    @classmethod
    def from_dense(cls, Gx, Gz) -> CssCode:
        return cls(ParityCheckMatrix.from_dense(Gx, 2), ParityCheckMatrix.from_dense(Gz, 2))

    def to_stabilizer(self) -> StabilizerCode:
        gens = []
        for row in self.Gx.rows:
            gens.append(QuaternaryVector(self.n, 0, sum(1 << c for c, _ in row)))
        for row in self.Gz.rows:
            gens.append(QuaternaryVector(self.n, sum(1 << c for c, _ in row), 0))
        return StabilizerCode(gens, self.n)

    @functools.cached_property
    def x_block(self) -> BlockCode:
        """Binary code ``ker(Gz)`` with ``rowspace(Gx)`` excluded: X-type logical operators."""
        return BlockCode(gf(2), 1, self.n, self.Gz.dense(), excluded=self.Gx.dense(), label="css-x")

    @functools.cached_property
    def z_block(self) -> BlockCode:
        return BlockCode(gf(2), 1, self.n, self.Gx.dense(), excluded=self.Gz.dense(), label="css-z")

    @property
    def k(self) -> int:
        F = gf(2)
        return self.n - linalg.rank(F, self.Gx.dense()) - linalg.rank(F, self.Gz.dense())

    def __repr__(self) -> str:
        return f"CssCode([[{self.n},{self.k}]])"


# --------------------------------------------------------------------------- operations


def _entries(c, n: int, q: int) -> np.ndarray:
    if isinstance(c, Codeword):
        if c.q != q:
            raise DomainError(f"codeword over GF({c.q}) used with a GF({q}) matrix")
        c = c.entries
    v = np.asarray(c, dtype=np.int64)
    if v.shape != (n,):
        raise DomainError(f"vector length {v.shape} does not match n={n}")
    if v.size and (v.min() < 0 or v.max() >= q):
        raise DomainError(f"entries must be elements of GF({q})")
    return v


def syndrome(H: ParityCheckMatrix, c: Codeword | Sequence[int]) -> np.ndarray:
    """``H c`` over GF(q)."""
    v = _entries(c, H.n, H.q)
    F = H.field
    out = np.zeros(H.r, dtype=np.int64)
    for i, row in enumerate(H.rows):
        acc = 0
        for col, coef in row:
            if v[col]:
                acc = F.add[acc, F.mul[coef, v[col]]]
        out[i] = acc
    return out


@dataclass(frozen=True)
class Elimination:
    """Result of reducing ``H_J``: ``reduced`` has unit columns at ``pivots``
    and zero rows below ``rank``; ``dependent`` lists the remaining columns."""

    reduced: np.ndarray
    columns: tuple[int, ...]
    pivots: tuple[int, ...]
    dependent: tuple[int, ...]
    rank: int

    @property
    def corank(self) -> int:
        return len(self.columns) - self.rank


def gaussian_eliminate(H: ParityCheckMatrix, J: Sequence[int] | None = None) -> Elimination:
    cols = tuple(range(H.n)) if J is None else tuple(int(j) for j in J)
    sub = H.dense()[:, list(cols)]
    R, piv = linalg.rref(H.field, sub) if sub.size else (sub.copy(), [])
    pivots = tuple(cols[p] for p in piv)
    dependent = tuple(c for i, c in enumerate(cols) if i not in set(piv))
    return Elimination(R, cols, pivots, dependent, len(piv))


def shorten(C: LinearCode, J: Sequence[int]) -> LinearCode:
    """``C_J = {c_J : c_I = 0}``: the parity checks restricted to the columns ``J``."""
    return LinearCode(C.H.restrict(list(J)))


@dataclass
class Completions:
    codewords: list[Codeword]
    truncated: bool = False
    total: int = 0

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self) -> Iterator[Codeword]:
        return iter(self.codewords)

    def __getitem__(self, i):
        return self.codewords[i]


def erasure_complete(
    C: LinearCode,
    known_positions: Sequence[int],
    known_values: Sequence[int],
    limit: int = DEFAULT_COMPLETION_LIMIT,
) -> Completions:
    """All codewords equal to ``known_values`` on ``known_positions``.

    An inconsistent assignment gives an empty result.  At most ``limit``
    codewords are produced; ``truncated`` reports a cut.
    """
    n, F = C.n, C.H.field
    I = [int(i) for i in known_positions]
    vals = np.asarray(known_values, dtype=np.int64)
    if len(set(I)) != len(I) or len(I) != vals.size:
        raise DomainError("known positions must be distinct and match the values")
    Iset = set(I)
    J = [j for j in range(n) if j not in Iset]
    D = C.H.dense()
    y = linalg.matmul(F, D[:, I], vals) if I else np.zeros(C.H.r, np.int64)
    solver = linalg.LinearSolver(F, D[:, J])
    X, ok = solver.solve(F.neg[y][None, :])
    if not ok[0]:
        return Completions([], False, 0)
    total = F.q**solver.corank
    base = np.zeros(n, dtype=np.int64)
    base[I] = vals
    out = []
    K = solver.kernel
    count = 0
    for coeffs in itertools.product(range(F.q), repeat=solver.corank):
        if count >= limit:
            return Completions(out, True, total)
        x = X[0].copy()
        for a, row in zip(coeffs, K):
            if a:
                x = F.add[x, F.mul[a, row]]
        c = base.copy()
        c[J] = x
        out.append(Codeword(n, C.q, tuple(int(t) for t in c)))
        count += 1
    return Completions(out, False, total)


@dataclass(frozen=True)
class StabilizerReport:
    n: int
    k: int
    generators: int
    css: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return True


def validate_stabilizer(S: StabilizerCode | CssCode) -> StabilizerReport:
    """Raise :class:`ValidationError` unless the generators commute pairwise and are independent."""
    if isinstance(S, CssCode):
        F = gf(2)
        prod = linalg.matmul(F, S.Gx.dense(), S.Gz.dense().T)
        bad = np.argwhere(prod)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            raise ValidationError(f"Gx row {i} and Gz row {j} overlap oddly: Gx Gz^T != 0")
        stab = S.to_stabilizer()
        report = validate_stabilizer(stab)
        return StabilizerReport(report.n, report.k, report.generators, css=True)
    gens = S.generators
    for i, j in itertools.combinations(range(len(gens)), 2):
        if trace_inner_product(gens[i], gens[j]):
            raise ValidationError(
                f"generators {i} ({gens[i].to_pauli()}) and {j} ({gens[j].to_pauli()}) anticommute"
            )
    if S.rank != len(gens):
        # find the first dependent generator for the message
        F = gf(2)
        for t in range(1, len(gens) + 1):
            if linalg.rank(F, S.symplectic[:t]) < t:
                raise ValidationError(f"generator {t - 1} is a product of earlier generators")
    return StabilizerReport(S.n, S.k, len(gens))


def quantum_weight_filter(c: QuaternaryVector | Codeword, S: StabilizerCode) -> bool:
    """True iff ``c`` is a non-trivial logical operator, i.e. ``c`` is not in ``C``.

    The caller guarantees ``c`` commutes with every generator.
    """
    if isinstance(c, Codeword):
        c = c.to_quaternary()
    if c.n != S.n:
        raise DomainError("length mismatch")
    if c.u == 0 and c.v == 0:
        return False
    return not S.contains_stabilizer(c)
