from __future__ import annotations

import itertools

import numpy as np
import pytest

from distver import ConfigurationError, DomainError, FieldElement, QuaternaryVector, field_arith, gf, trace_inner_product
from distver.field import SUPPORTED_ORDERS

OMEGA, OMEGA_BAR = 2, 3  # GF(4) as polynomials in w: w = 0b10, w^2 = w + 1 = 0b11


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms(q):
    F = gf(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add[F.add[a, b], c] == F.add[a, F.add[b, c]]
        assert F.mul[F.mul[a, b], c] == F.mul[a, F.mul[b, c]]
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
    for a, b in itertools.product(els, repeat=2):
        assert F.add[a, b] == F.add[b, a]
        assert F.mul[a, b] == F.mul[b, a]
    for a in els:
        assert F.add[a, 0] == a and F.mul[a, 1] == a
        assert F.add[a, F.neg[a]] == 0
        if a:
            assert F.mul[a, F.inv[a]] == 1
    # multiplicative group is cyclic of order q - 1: no zero divisors
    assert all(F.mul[a, b] for a in range(1, q) for b in range(1, q))


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_characteristic(q):
    F = gf(q)
    p = F.characteristic
    for a in range(q):
        acc = 0
        for _ in range(p):
            acc = F.add[acc, a]
        assert acc == 0


def test_scalar_examples():
    assert field_arith(4, OMEGA, OMEGA, "mul") == FieldElement(4, OMEGA_BAR)
    assert field_arith(4, OMEGA, 1, "add") == FieldElement(4, OMEGA_BAR)
    assert field_arith(2, 1, 1, "add").value == 0
    assert field_arith(5, 2, 3, "mul").value == 1


def test_conjugation():
    assert field_arith(4, OMEGA, kind="conj").value == OMEGA_BAR
    assert field_arith(4, OMEGA_BAR, kind="conj").value == OMEGA
    assert field_arith(4, 1, kind="conj").value == 1
    assert all(field_arith(5, a, kind="conj").value == a for a in range(5))


def test_element_operators():
    a, b = FieldElement(7, 3), FieldElement(7, 5)
    assert (a + b).value == 1
    assert (a * b).value == 1
    assert a.inverse() == b
    assert (-a).value == 4


def test_errors():
    with pytest.raises(DomainError):
        field_arith(5, 0, kind="inv")
    with pytest.raises(DomainError):
        FieldElement(5, 0).inverse()
    with pytest.raises(ConfigurationError):
        gf(6)
    with pytest.raises(ConfigurationError):
        field_arith(16, 1, 1, "add")
    with pytest.raises(DomainError):
        field_arith(3, 3, 1, "add")


def test_quaternary_pauli_map():
    e = QuaternaryVector.from_pauli("IXYZ")
    assert e.symbols() == [0, OMEGA, OMEGA_BAR, 1]
    assert e.to_pauli() == "IXYZ"
    assert e.weight == 3
    assert e.conjugate().to_pauli() == "IYXZ"
    assert (e + e).weight == 0
    with pytest.raises(DomainError):
        QuaternaryVector.from_pauli("XQ")


def test_trace_inner_product_examples():
    x, z = QuaternaryVector.from_symbols([OMEGA]), QuaternaryVector.from_symbols([1])
    assert trace_inner_product(x, z) == 1
    assert trace_inner_product(x, x) == 0
    xx, zz = QuaternaryVector.from_symbols([OMEGA, OMEGA]), QuaternaryVector.from_symbols([1, 1])
    assert trace_inner_product(xx, zz) == 0
    with pytest.raises(DomainError):
        trace_inner_product(x, xx)


def _tip_reference(a: list[int], b: list[int]) -> int:
    """Tr(a . conj(b)) over GF(4) with explicit tables, trace(w) = trace(w^2) = 1."""
    F = gf(4)
    acc = 0
    for s, t in zip(a, b):
        acc = F.add[acc, F.mul[s, F.conj[t]]]
    return int(acc) >> 1  # Tr(x) = x + x^2 is the w-coefficient of x


def test_trace_inner_product_against_definition():
    rng = np.random.default_rng(0)
    for _ in range(300):
        n = int(rng.integers(1, 9))
        a, b, c = (rng.integers(0, 4, n).tolist() for _ in range(3))
        ea, eb, ec = (QuaternaryVector.from_symbols(s) for s in (a, b, c))
        assert trace_inner_product(ea, eb) == _tip_reference(a, b)
        assert trace_inner_product(ea, eb) == trace_inner_product(eb, ea)
        assert trace_inner_product(ea + ec, eb) == trace_inner_product(ea, eb) ^ trace_inner_product(ec, eb)
        assert trace_inner_product(ea, ea) == 0
