"""Gauss-Jordan elimination over any exact field (Fraction or RationalFunction)."""

from __future__ import annotations

from typing import Any, Sequence

from .errors import InternalInvariantError

Matrix = list[list[Any]]


def _is_zero(x: Any) -> bool:
    return x == 0


def solve(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    """Return X with A X = B. Raises InternalInvariantError if A is singular."""
    n = len(A)
    m = len(B[0]) if B else 0
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(M[r][col])), None)
        if piv is None:
            raise InternalInvariantError("singular system in exact elimination")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        if p != 1:
            inv = 1 / p
            M[col] = [x * inv if not _is_zero(x) else x for x in M[col]]
        for r in range(n):
            if r != col and not _is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [a - f * b if not _is_zero(b) else a for a, b in zip(M[r], M[col])]
    return [row[n : n + m] for row in M]


def rank(A: Sequence[Sequence[Any]]) -> int:
    M = [list(r) for r in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rk = 0
    for col in range(cols):
        piv = next((r for r in range(rk, rows) if not _is_zero(M[r][col])), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        p = M[rk][col]
        for r in range(rk + 1, rows):
            if not _is_zero(M[r][col]):
                f = M[r][col] / p
                M[r] = [a - f * b for a, b in zip(M[r], M[rk])]
        rk += 1
        if rk == rows:
            break
    return rk


def matmul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out_row = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                a = row[k]
                if not _is_zero(a):
                    b = B[k][j]
                    if not _is_zero(b):
                        acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def transpose(A: Sequence[Sequence[Any]]) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []
