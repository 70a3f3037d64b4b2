"""Assembly and verification of Hadamard candidates from solved blocks.

Matrices are dense numpy int arrays with entries strictly in {-1,+1}.  The
three block arrays (Williamson 4x4, Baumert-Hall 12x12, Goethals-Seidel 4x4
with the back-diagonal twist) are transcribed cell for cell; verification is
always the exact indicator test D = H^T H == M*I, never trust in the array.
"""

from __future__ import annotations

from typing import IO, Sequence

import numpy as np

SignMatrix = np.ndarray


def _as_sign_matrix(M, name: str = "matrix") -> SignMatrix:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square")
    if not np.isin(A, (-1, 1)).all():
        raise ValueError(f"{name} entries must be +/-1")
    return A


def circulant(first_row: Sequence[int]) -> SignMatrix:
    """Circulant matrix: row i is the first row cyclically shifted right i places."""
    row = list(first_row)
    if not row:
        raise ValueError("first row must be nonempty")
    n = len(row)
    return np.array([[row[(j - i) % n] for j in range(n)] for i in range(n)], dtype=np.int64)


def back_diagonal(k: int) -> np.ndarray:
    """0/1 matrix with ones on the anti-diagonal (R[i][j] = 1 iff i+j = k-1)."""
    if k < 1:
        raise ValueError("order must be at least 1")
    R = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        R[i, k - 1 - i] = 1
    return R


def williamson_array(A, B, C, D) -> SignMatrix:
    """Order-4k array [[A,B,C,D],[-B,A,-D,C],[-C,D,A,-B],[-D,-C,B,A]]."""
    A, B, C, D = (_as_sign_matrix(X, n) for X, n in ((A, "A"), (B, "B"), (C, "C"), (D, "D")))
    if not (A.shape == B.shape == C.shape == D.shape):
        raise ValueError("blocks must share one order")
    return np.block(
        [
            [A, B, C, D],
            [-B, A, -D, C],
            [-C, D, A, -B],
            [-D, -C, B, A],
        ]
    )


# Baumert-Hall cell table, one letter per block cell with its sign; every
# letter appears exactly three times in each row and column (unit-tested).
_BAUMERT_HALL_CELLS = [
    "+A +A +A +B -B +C -C -D +B +C -D -D",
    "+A -A +B -A -B -D +D -C -B -D -C -C",
    "+A -B -A +A -D +D -B +B -C -D +C -C",
    "+B +A -A -A +D +D +D +C +C -B -B -C",
    "+B -D +D +D +A +A +A +C -C +B -C +B",
    "+B +C -D +D +A -A +C -A -D +C +B -B",
    "+D -C +B -B +A -C -A +A +B +C +D -D",
    "-C -D -C -D +C +A -A -A -D +B -B -B",
    "+D -C -B -B -B +C +C -D +A +A +A +D",
    "-D -B +C +C +C +B +B -D +A -A +D -A",
    "+C -B -C +C +D -B -D -B +A -D -A +A",
    "-C -D -D +C -C -B +B +B +D +A -A -A",
]


def baumert_hall_cells() -> list[list[tuple[int, str]]]:
    """Parsed 12x12 sign/letter table."""
    table = []
    for line in _BAUMERT_HALL_CELLS:
        row = []
        for cell in line.split():
            row.append((1 if cell[0] == "+" else -1, cell[1]))
        table.append(row)
    return table


def baumert_hall_array(A, B, C, D) -> SignMatrix:
    """Order-12k array from the fixed 12x12 sign/letter arrangement."""
    A, B, C, D = (_as_sign_matrix(X, n) for X, n in ((A, "A"), (B, "B"), (C, "C"), (D, "D")))
    if not (A.shape == B.shape == C.shape == D.shape):
        raise ValueError("blocks must share one order")
    blocks = {"A": A, "B": B, "C": C, "D": D}
    rows = []
    for row in baumert_hall_cells():
        rows.append([sign * blocks[letter] for sign, letter in row])
    return np.block(rows)


def goethals_seidel(X1, X2, X3, X4) -> SignMatrix:
    """Order-4k Goethals-Seidel array with R the back-diagonal identity."""
    X1, X2, X3, X4 = (
        _as_sign_matrix(X, n) for X, n in ((X1, "X1"), (X2, "X2"), (X3, "X3"), (X4, "X4"))
    )
    if not (X1.shape == X2.shape == X3.shape == X4.shape):
        raise ValueError("blocks must share one order")
    R = back_diagonal(X1.shape[0])
    return np.block(
        [
            [X1, X2 @ R, X3 @ R, X4 @ R],
            [-X2 @ R, X1, X4.T @ R, -X3.T @ R],
            [-X3 @ R, -X4.T @ R, X1, X2.T @ R],
            [-X4 @ R, X3.T @ R, -X2.T @ R, X1],
        ]
    )


def verify(H) -> tuple[bool, np.ndarray]:
    """Exact orthogonality test: returns (is_hadamard, indicator D = H^T H)."""
    H = _as_sign_matrix(H, "candidate")
    M = H.shape[0]
    D = H.T @ H
    ok = bool(np.array_equal(D, M * np.eye(M, dtype=np.int64)))
    return ok, D


def order_admissible(M: int) -> bool:
    """Hadamard orders are 1, 2 or multiples of 4."""
    return M in (1, 2) or M % 4 == 0


def max_offdiagonal(D: np.ndarray) -> int:
    if D.shape[0] == 1:
        return 0
    mask = ~np.eye(D.shape[0], dtype=bool)
    return int(np.abs(D[mask]).max())


def report_line(H) -> str:
    ok, D = verify(H)
    return f"ORDER={H.shape[0]} HADAMARD={'yes' if ok else 'no'} MAX_OFFDIAG={max_offdiagonal(D)}"


# -- file formats -------------------------------------------------------------


def write_matrix(H, fp: IO[str]) -> None:
    """One row per line of +/- characters."""
    H = _as_sign_matrix(H, "matrix")
    for row in H:
        fp.write("".join("+" if v > 0 else "-" for v in row) + "\n")


def read_matrix(fp: IO[str]) -> SignMatrix:
    rows = []
    for raw in fp:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for ch in line:
            if ch == "+":
                row.append(1)
            elif ch == "-":
                row.append(-1)
            else:
                raise ValueError(f"bad matrix character {ch!r}")
        rows.append(row)
    if not rows:
        raise ValueError("empty matrix file")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged rows in matrix file")
    return _as_sign_matrix(np.array(rows, dtype=np.int64))


def load_matrix(path) -> SignMatrix:
    with open(path, encoding="utf-8") as fp:
        return read_matrix(fp)


def save_matrix(H, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        write_matrix(H, fp)


def write_pbm(H, fp: IO[str]) -> None:
    """Plain PBM (P1): -1 renders black (1), +1 renders white (0)."""
    H = _as_sign_matrix(H, "matrix")
    M = H.shape[0]
    fp.write(f"P1\n{M} {M}\n")
    for row in H:
        fp.write(" ".join("0" if v > 0 else "1" for v in row) + "\n")


def write_pgm(D: np.ndarray, fp: IO[str]) -> None:
    """Plain PGM (P2) of a nonnegative integer matrix (indicator export)."""
    D = np.asarray(D, dtype=np.int64)
    if (D < 0).any():
        D = np.abs(D)
    maxval = max(1, int(D.max()))
    M, N = D.shape
    fp.write(f"P2\n{N} {M}\n{maxval}\n")
    for row in D:
        fp.write(" ".join(str(int(v)) for v in row) + "\n")
