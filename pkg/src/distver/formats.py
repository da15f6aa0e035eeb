"""Text formats: alist parity-check matrices and Pauli-string stabilizer codes.

alist (MacKay) layout::

    n r
    max_col_degree max_row_degree
    <n column degrees>
    <r row degrees>
    <n lines: 1-based row indices of each column, zero padded>
    <r lines: 1-based column indices of each row, zero padded>

For ``q > 2`` every index is followed by its coefficient (``index coef``
pairs; padding is ``0 0``).  Binary files carry bare indices.

Pauli text: one generator per line over ``I X Y Z``; ``#`` starts a comment.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .codes import LinearCode, ParityCheckMatrix, StabilizerCode
from .errors import DomainError, FormatError
from .field import QuaternaryVector


def _int_tokens(line: str, path, lineno) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise FormatError(f"non-integer token in {line.strip()!r}", path, lineno) from None


def parse_alist(text: str, q: int = 2, path: str | None = None) -> ParityCheckMatrix:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 4:
        raise FormatError("alist needs at least four header lines", path, None)
    it = iter(lines)
    lineno, ln = next(it)
    head = _int_tokens(ln, path, lineno)
    if len(head) != 2 or min(head) < 0:
        raise FormatError("first line must be 'n r'", path, lineno)
    n, r = head
    lineno, ln = next(it)
    if len(_int_tokens(ln, path, lineno)) != 2:
        raise FormatError("second line must hold the two maximum degrees", path, lineno)
    lineno, ln = next(it)
    col_deg = _int_tokens(ln, path, lineno)
    if len(col_deg) != n:
        raise FormatError(f"expected {n} column degrees, got {len(col_deg)}", path, lineno)
    lineno, ln = next(it)
    row_deg = _int_tokens(ln, path, lineno)
    if len(row_deg) != r:
        raise FormatError(f"expected {r} row degrees, got {len(row_deg)}", path, lineno)
    pairs = q > 2

    def entries(expected_deg: int, limit: int):
        lineno, ln = next(it, (None, None))
        if ln is None:
            raise FormatError("unexpected end of file", path, None)
        toks = _int_tokens(ln, path, lineno)
        if pairs:
            if len(toks) % 2:
                raise FormatError("q-ary alist lines hold 'index coefficient' pairs", path, lineno)
            items = [(toks[i], toks[i + 1]) for i in range(0, len(toks), 2)]
        else:
            items = [(t, 1) for t in toks]
        items = [(i, c) for i, c in items if i != 0]
        if len(items) != expected_deg:
            raise FormatError(f"degree {expected_deg} declared but {len(items)} entries listed", path, lineno)
        for i, c in items:
            if not 1 <= i <= limit:
                raise FormatError(f"index {i} out of range 1..{limit}", path, lineno)
            if not 0 < c < q:
                raise FormatError(f"coefficient {c} is not a non-zero element of GF({q})", path, lineno)
        return lineno, items

    M = np.zeros((r, n), dtype=np.int64)
    for j in range(n):
        _, items = entries(col_deg[j], r)
        for i, c in items:
            M[i - 1, j] = c
    for i in range(r):
        lineno, items = entries(row_deg[i], n)
        for j, c in items:
            if M[i, j - 1] != c:
                raise FormatError(f"row {i + 1} disagrees with the column lists at column {j}", path, lineno)
        if len(items) != np.count_nonzero(M[i]):
            raise FormatError(f"row {i + 1} disagrees with the column lists", path, lineno)
    return ParityCheckMatrix.from_dense(M, q)


def format_alist(H: ParityCheckMatrix) -> str:
    D = H.dense()
    pairs = H.q > 2
    col_deg = (D != 0).sum(axis=0)
    row_deg = (D != 0).sum(axis=1)
    mc = int(col_deg.max()) if H.n else 0
    mr = int(row_deg.max()) if H.r else 0
    out = io.StringIO()
    out.write(f"{H.n} {H.r}\n{mc} {mr}\n")
    out.write(" ".join(str(int(d)) for d in col_deg) + "\n")
    out.write(" ".join(str(int(d)) for d in row_deg) + "\n")

    def line(idx, coefs, width):
        toks = []
        for i, c in zip(idx, coefs):
            toks += [str(i + 1), str(c)] if pairs else [str(i + 1)]
        pad = max(width, 1) - len(idx)  # an all-zero matrix still writes one placeholder per line
        toks += (["0", "0"] if pairs else ["0"]) * pad
        return " ".join(toks) + "\n"

    for j in range(H.n):
        idx = np.flatnonzero(D[:, j])
        out.write(line(idx.tolist(), D[idx, j].tolist(), mc))
    for i in range(H.r):
        idx = np.flatnonzero(D[i])
        out.write(line(idx.tolist(), D[i, idx].tolist(), mr))
    return out.getvalue()


def read_alist(path: str | Path, q: int = 2) -> LinearCode:
    text = Path(path).read_text()
    return LinearCode(parse_alist(text, q, str(path)))


def write_alist(path: str | Path, H: ParityCheckMatrix | LinearCode) -> None:
    if isinstance(H, LinearCode):
        H = H.H
    Path(path).write_text(format_alist(H))


def parse_pauli(text: str, path: str | None = None) -> StabilizerCode:
    gens: list[QuaternaryVector] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().replace(" ", "")
        if not line:
            continue
        try:
            g = QuaternaryVector.from_pauli(line)
        except DomainError as exc:
            raise FormatError(str(exc), path, lineno) from None
        if n is None:
            n = g.n
        elif g.n != n:
            raise FormatError(f"generator of length {g.n}, expected {n}", path, lineno)
        gens.append(g)
    if not gens:
        raise FormatError("no generators found", path, None)
    return StabilizerCode(gens, n)


def format_pauli(S: StabilizerCode, comment: str | None = None) -> str:
    head = "".join(f"# {c}\n" for c in comment.splitlines()) if comment else ""
    return head + "".join(p + "\n" for p in S.to_pauli_lines())


def read_pauli(path: str | Path) -> StabilizerCode:
    return parse_pauli(Path(path).read_text(), str(path))


def write_pauli(path: str | Path, S: StabilizerCode, comment: str | None = None) -> None:
    Path(path).write_text(format_pauli(S, comment))


def read_syndrome(path: str | Path, length: int, q: int = 2) -> np.ndarray:
    """Whitespace-separated field elements (``#`` comments allowed)."""
    toks: list[int] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        toks += _int_tokens(raw.split("#", 1)[0], str(path), lineno)
    if len(toks) != length:
        raise FormatError(f"syndrome has {len(toks)} entries, expected {length}", str(path), None)
    if any(not 0 <= t < q for t in toks):
        raise FormatError(f"syndrome entries must lie in 0..{q - 1}", str(path), None)
    return np.array(toks, dtype=np.int64)


def looks_like_pauli(text: str) -> bool:
    body = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    body = [b for b in body if b]
    return bool(body) and all(set(b.replace(" ", "").upper()) <= set("IXYZ") for b in body)


def load_code(path: str | Path, q: int = 2, quantum: bool | None = None) -> LinearCode | StabilizerCode:
    text = Path(path).read_text()
    if quantum is None:
        quantum = looks_like_pauli(text)
    if quantum:
        return parse_pauli(text, str(path))
    return LinearCode(parse_alist(text, q, str(path)))

