from __future__ import annotations

import numpy as np
import pytest

from distver import FormatError, LinearCode, ParityCheckMatrix, StabilizerCode
from distver.formats import (
    format_alist,
    format_pauli,
    load_code,
    looks_like_pauli,
    parse_alist,
    parse_pauli,
    read_alist,
    read_syndrome,
    write_alist,
    write_pauli,
)
from instances import FIVE_QUBIT, STEANE, hamming_matrix

HAMMING_ALIST = """7 3
3 4
1 1 2 1 2 2 3
4 4 4
1 0 0
2 0 0
1 2 0
3 0 0
1 3 0
2 3 0
1 2 3
1 3 5 7
2 3 6 7
4 5 6 7
"""


def test_parse_known_alist():
    H = parse_alist(HAMMING_ALIST)
    assert np.array_equal(H.dense(), hamming_matrix(3))
    assert format_alist(H) == HAMMING_ALIST


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8])
def test_alist_round_trip(q):
    rng = np.random.default_rng(q)
    for _ in range(10):
        M = rng.integers(0, q, size=(4, 9)) * (rng.random((4, 9)) < 0.5)
        H = ParityCheckMatrix.from_dense(M, q)
        back = parse_alist(format_alist(H), q)
        assert np.array_equal(back.dense(), H.dense())


def test_alist_file_round_trip(tmp_path):
    path = tmp_path / "h.alist"
    write_alist(path, LinearCode.from_dense(hamming_matrix(4)))
    C = read_alist(path)
    assert (C.n, C.k) == (15, 11)
    assert isinstance(load_code(path), LinearCode)


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("7\n2 4\n", None, "four header lines"),
        ("7 3\n2 4\n1 1 2\n4 4 4\n", 3, "column degrees"),
        (HAMMING_ALIST.replace("1 2 3\n", "1 2 9\n"), 11, "out of range"),
        (HAMMING_ALIST.replace("1 3 5 7\n", "1 3 5 6\n"), 12, "disagrees"),
        (HAMMING_ALIST.replace("3 0 0\n", "x 0 0\n"), 8, "non-integer"),
        (HAMMING_ALIST.replace("1 0 0\n2 0 0\n", "1 2 0\n2 0 0\n"), 5, "declared"),
    ],
)
def test_alist_errors_carry_location(text, line, message):
    with pytest.raises(FormatError, match=message) as info:
        parse_alist(text, path="bad.alist")
    assert info.value.path == "bad.alist"
    assert info.value.line == line


def test_qary_alist_rejects_bad_coefficient():
    text = "2 1\n1 2\n1 1\n2\n1 1\n1 2\n1 1 2 3\n"
    with pytest.raises(FormatError, match="coefficient 3"):
        parse_alist(text, q=3)


@pytest.mark.parametrize("gens", [FIVE_QUBIT, STEANE])
def test_pauli_round_trip(tmp_path, gens):
    S = StabilizerCode(gens)
    text = format_pauli(S, comment="test code\nsecond line")
    assert text.startswith("# test code\n# second line\n")
    assert parse_pauli(text).to_pauli_lines() == list(gens)
    path = tmp_path / "s.pauli"
    write_pauli(path, S)
    assert isinstance(load_code(path), StabilizerCode)


def test_pauli_parsing_details():
    S = parse_pauli("# header\nX Z Z X I  # spaced\n\nIXZZX\n")
    assert S.to_pauli_lines() == ["XZZXI", "IXZZX"]
    with pytest.raises(FormatError) as info:
        parse_pauli("XX\nXQ\n", path="p.txt")
    assert info.value.line == 2
    with pytest.raises(FormatError, match="length"):
        parse_pauli("XX\nXXX\n")
    with pytest.raises(FormatError, match="no generators"):
        parse_pauli("# only a comment\n")
    assert looks_like_pauli("XZ\n# c\nIY")
    assert not looks_like_pauli(HAMMING_ALIST)


def test_read_syndrome(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("1 0 # c\n2\n")
    assert read_syndrome(path, 3, q=3).tolist() == [1, 0, 2]
    with pytest.raises(FormatError, match="expected 4"):
        read_syndrome(path, 4, q=3)
    with pytest.raises(FormatError, match="0..1"):
        read_syndrome(path, 3, q=2)
