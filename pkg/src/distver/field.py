"""Table-driven arithmetic over the small Galois fields GF(q), q in {2,3,4,5,7,8,9}.

Elements are integers ``0..q-1``.  For prime ``q`` the integer is the residue.
For ``q = p**u`` the integer holds the coefficients of a polynomial in ``x`` in
base ``p`` (least significant digit = constant term), reduced modulo a fixed
primitive polynomial:

======  =================  =======================
 q       polynomial          coefficients (low->high)
======  =================  =======================
 4       x^2 + x + 1         (1, 1, 1)
 8       x^3 + x + 1         (1, 1, 0, 1)
 9       x^2 + x + 2         (2, 1, 1)
======  =================  =======================

With this encoding addition is digit-wise modulo ``p`` (plain XOR when
``p = 2``), and in GF(4) the element ``w = x`` has index 2 and ``w^2 = x + 1``
has index 3.

Quaternary (GF(4)) vectors used for Pauli operators are stored as two packed
bit planes ``(u, v)`` with ``e = u + w v``; the GF(4) index of a symbol is
``u + 2 v``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ConfigurationError, DomainError

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# q -> (p, u, modulus coefficients low->high, monic)
_PRIME_POWERS = {
    4: (2, 2, (1, 1, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (2, 1, 1)),
}


@dataclass(frozen=True, eq=False)
class GaloisField:
    """Lookup tables for one field.  Use :func:`gf` to obtain instances."""

    q: int
    p: int
    u: int
    modulus: tuple[int, ...]
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 and must never be used
    conj: np.ndarray

    @property
    def is_prime(self) -> bool:
        return self.u == 1

    @property
    def characteristic(self) -> int:
        return self.p

    def digits(self, a: int) -> list[int]:
        """Base-p coordinates of ``a`` (length ``u``)."""
        return [(a // self.p**i) % self.p for i in range(self.u)]

    def __repr__(self) -> str:
        return f"GF({self.q})"


def _poly_tables(p: int, u: int, modulus: tuple[int, ...]):
    q = p**u

    def to_digits(a):
        return [(a // p**i) % p for i in range(u)]

    def from_digits(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    add = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        da = to_digits(a)
        for b in range(q):
            db = to_digits(b)
            add[a, b] = from_digits([(x + y) % p for x, y in zip(da, db)])

    def times_x(ds):
        # multiply by x and reduce by the monic modulus
        top = ds[-1]
        shifted = [0] + ds[:-1]
        return [(s - top * modulus[i]) % p for i, s in enumerate(shifted)]

    exp = [0] * (q - 1)
    cur = [1] + [0] * (u - 1)
    for i in range(q - 1):
        exp[i] = from_digits(cur)
        cur = times_x(cur)
    if sorted(exp) != list(range(1, q)):
        raise AssertionError(f"modulus {modulus} is not primitive over GF({p})")
    log = {e: i for i, e in enumerate(exp)}
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(1, q):
        for b in range(1, q):
            mul[a, b] = exp[(log[a] + log[b]) % (q - 1)]
    return add, mul


@functools.lru_cache(maxsize=None)
def gf(q: int) -> GaloisField:
    """Return the (cached) field of order ``q``."""
    if q not in SUPPORTED_ORDERS:
        raise ConfigurationError(f"unsupported field order q={q}; supported: {SUPPORTED_ORDERS}")
    if q in _PRIME_POWERS:
        p, u, modulus = _PRIME_POWERS[q]
        add, mul = _poly_tables(p, u, modulus)
    else:
        p, u, modulus = q, 1, (0, 1)
        r = np.arange(q)
        add = (r[:, None] + r[None, :]) % q
        mul = (r[:, None] * r[None, :]) % q
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    sub = add[:, neg]
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
    if q == 4:
        conj = np.array([0, 1, 3, 2], dtype=np.int64)
    else:
        conj = np.arange(q, dtype=np.int64)
    for t in (add, mul, neg, sub, inv, conj):
        t.setflags(write=False)
    return GaloisField(q, p, u, modulus, add, sub, mul, neg, inv, conj)


@dataclass(frozen=True)
class FieldElement:
    q: int
    value: int

    def __post_init__(self):
        gf(self.q)
        if not 0 <= self.value < self.q:
            raise DomainError(f"value {self.value} outside GF({self.q})")

    def _check(self, other: FieldElement) -> GaloisField:
        if other.q != self.q:
            raise DomainError(f"mixing GF({self.q}) and GF({other.q})")
        return gf(self.q)

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.q, int(self._check(other).add[self.value, other.value]))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.q, int(self._check(other).sub[self.value, other.value]))

    def __mul__(self, other: FieldElement) -> FieldElement:
        return FieldElement(self.q, int(self._check(other).mul[self.value, other.value]))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.q, int(gf(self.q).neg[self.value]))

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise DomainError("inverse of zero")
        return FieldElement(self.q, int(gf(self.q).inv[self.value]))

    def conjugate(self) -> FieldElement:
        return FieldElement(self.q, int(gf(self.q).conj[self.value]))


def field_arith(
    q: int, a: FieldElement | int, b: FieldElement | int | None = None,
    kind: Literal["add", "mul", "inv", "conj"] = "add",
) -> FieldElement:
    """Single dispatch point for the four scalar operations.

    ``conj`` is the Frobenius map ``x -> x^2`` on GF(4) (swapping w and w^2)
    and the identity on every other field.
    """
    F = gf(q)
    av = a.value if isinstance(a, FieldElement) else int(a)
    if not 0 <= av < q:
        raise DomainError(f"{av} is not an element of GF({q})")
    if kind in ("add", "mul"):
        if b is None:
            raise DomainError(f"{kind} needs two operands")
        bv = b.value if isinstance(b, FieldElement) else int(b)
        if not 0 <= bv < q:
            raise DomainError(f"{bv} is not an element of GF({q})")
        table = F.add if kind == "add" else F.mul
        return FieldElement(q, int(table[av, bv]))
    if kind == "inv":
        if av == 0:
            raise DomainError("inverse of zero")
        return FieldElement(q, int(F.inv[av]))
    if kind == "conj":
        return FieldElement(q, int(F.conj[av]))
    raise ConfigurationError(f"unknown operation {kind!r}")


class QuaternaryVector:
    """Length-n GF(4) vector kept as two bit planes, ``e = u + w v``.

    Bit ``j`` of ``u`` (resp. ``v``) is the coefficient of 1 (resp. w) at
    position ``j``.  Addition is a pair of XORs.
    """

    __slots__ = ("n", "u", "v")

    def __init__(self, n: int, u: int = 0, v: int = 0):
        mask = (1 << n) - 1
        if u & ~mask or v & ~mask:
            raise DomainError("bit planes wider than the vector length")
        self.n = n
        self.u = u
        self.v = v

    @classmethod
    def from_symbols(cls, symbols: Sequence[int]) -> QuaternaryVector:
        u = v = 0
        for j, s in enumerate(symbols):
            s = int(s)
            if not 0 <= s < 4:
                raise DomainError(f"{s} is not a GF(4) element")
            u |= (s & 1) << j
            v |= ((s >> 1) & 1) << j
        return cls(len(symbols), u, v)

    @classmethod
    def from_pauli(cls, text: str) -> QuaternaryVector:
        """Map X -> w, Z -> 1, Y -> w^2 (so Y = X Z up to phase)."""
        table = {"I": 0, "Z": 1, "X": 2, "Y": 3}
        try:
            return cls.from_symbols([table[c] for c in text.upper()])
        except KeyError as exc:
            raise DomainError(f"bad Pauli letter {exc.args[0]!r}") from None

    def symbols(self) -> list[int]:
        return [((self.u >> j) & 1) | (((self.v >> j) & 1) << 1) for j in range(self.n)]

    def to_pauli(self) -> str:
        return "".join("IZXY"[s] for s in self.symbols())

    def conjugate(self) -> QuaternaryVector:
        # u + w^2 v = (u + v) + w v
        return QuaternaryVector(self.n, self.u ^ self.v, self.v)

    @property
    def weight(self) -> int:
        return bin(self.u | self.v).count("1")

    def __add__(self, other: QuaternaryVector) -> QuaternaryVector:
        if other.n != self.n:
            raise DomainError("length mismatch")
        return QuaternaryVector(self.n, self.u ^ other.u, self.v ^ other.v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuaternaryVector)
            and (self.n, self.u, self.v) == (other.n, other.u, other.v)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.u, self.v))

    def __repr__(self) -> str:
        return f"QuaternaryVector({self.to_pauli()!r})"


def trace_inner_product(e1: QuaternaryVector, e2: QuaternaryVector) -> int:
    """``e1 . conj(e2) + conj(e1) . e2``; zero iff the Pauli operators commute."""
    if e1.n != e2.n:
        raise DomainError(f"length mismatch: {e1.n} != {e2.n}")
    return bin((e1.u & e2.v) ^ (e1.v & e2.u)).count("1") & 1
