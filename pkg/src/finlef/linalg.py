"""Exact integer matrix algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so every
operation is exact and shapes survive zero-sized dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SmithDecomposition",
    "identity",
    "int_matrix",
    "invert_unimodular",
    "is_unimodular",
    "smith",
    "solve",
    "zeros",
]


def int_matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an exact integer matrix from nested sequences."""
    rows = [[int(v) for v in row] for row in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    out = zeros(*shape)
    for i, row in enumerate(rows):
        if len(row) != shape[1]:
            raise ValueError("ragged matrix")
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    D: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def solve(self, b) -> np.ndarray | None:
        """Solve ``A @ x == b`` for the decomposed ``A``; see ``solve``."""
        m, n = self.D.shape
        b = np.array([int(v) for v in b], dtype=object)
        if b.shape != (m,):
            raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
        c = self.U.dot(b) if m else b
        y = np.zeros(n, dtype=object)
        for i in range(m):
            d = self.D[i, i] if i < n else 0
            if d == 0:
                if c[i] != 0:
                    return None
            elif c[i] % d:
                return None
            else:
                y[i] = c[i] // d
        x = self.V.dot(y) if n else y
        return np.array([int(v) for v in x], dtype=object)


def _pivot(D: np.ndarray, t: int):
    best = None
    rows, cols = D.shape
    for i in range(t, rows):
        for j in range(t, cols):
            v = D[i, j]
            if v != 0 and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def smith(A: np.ndarray) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivoting takes the smallest nonzero absolute value, ties broken by row and
    then column, so the output is a deterministic function of the input.
    """
    D = np.array(A, dtype=object, copy=True)
    m, n = D.shape
    U, V = identity(m), identity(n)

    def swap_rows(i, k):
        if i != k:
            D[[i, k], :] = D[[k, i], :]
            U[[i, k], :] = U[[k, i], :]

    def swap_cols(j, k):
        if j != k:
            D[:, [j, k]] = D[:, [k, j]]
            V[:, [j, k]] = V[:, [k, j]]

    for t in range(min(m, n)):
        while True:
            piv = _pivot(D, t)
            if piv is None:
                return SmithDecomposition(D, U, V)
            _, i, j = piv
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t, t]
            dirty = False
            for i in range(t + 1, m):
                if D[i, t]:
                    q = D[i, t] // p
                    D[i, :] -= q * D[t, :]
                    U[i, :] -= q * U[t, :]
                    dirty = dirty or D[i, t] != 0
            for j in range(t + 1, n):
                if D[t, j]:
                    q = D[t, j] // p
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                    dirty = dirty or D[t, j] != 0
            if dirty:
                continue
            # row t and column t are clean; enforce divisibility of the rest
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p),
                None,
            )
            if bad is None:
                break
            D[t, :] += D[bad, :]
            U[t, :] += U[bad, :]
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
    return SmithDecomposition(D, U, V)


def solve(A: np.ndarray, b) -> np.ndarray | None:
    """An integer solution of ``A @ x == b`` or ``None``.

    Free coordinates are set to zero in Smith coordinates, which makes the
    returned solution canonical for a given ``A`` and ``b``.
    """
    return smith(np.asarray(A, dtype=object)).solve(b)


def is_unimodular(A: np.ndarray) -> bool:
    A = np.asarray(A, dtype=object)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    snf = smith(A)
    return snf.rank == A.shape[0] and all(d == 1 for d in snf.diagonal)


def invert_unimodular(A: np.ndarray) -> np.ndarray:
    """Exact inverse of a square matrix with determinant +-1."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    snf = smith(A)
    if snf.rank != A.shape[0] or any(d != 1 for d in snf.diagonal):
        raise ValueError("matrix is not unimodular")
    # U A V = I  =>  A^-1 = V U
    return snf.V.dot(snf.U) if A.shape[0] else zeros(0, 0)
