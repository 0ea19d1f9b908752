"""Exact linear algebra over the prime field F_p on numpy int64 arrays."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np


def row_reduce_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form of A over F_p.
    Returns (R, pivots) where R keeps only the non-zero rows.
    """
    R = np.array(A, dtype=np.int64, copy=True) % p
    m, n = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            R[[r, pivot], :] = R[[pivot, r], :]
        inv = pow(int(R[r, c]), -1, p)
        R[r, :] = (R[r, :] * inv) % p
        for i in range(m):
            if i != r and R[i, c] != 0:
                R[i, :] = (R[i, :] - R[i, c] * R[r, :]) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(row_reduce_mod_p(A, p)[1])


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Unique solution of A x = b for square A, or None when A is singular."""
    n = A.shape[0]
    aug = np.concatenate([A % p, (b % p).reshape(n, 1)], axis=1)
    R, pivots = row_reduce_mod_p(aug, p)
    if pivots != list(range(n)):
        return None
    return R[:, n].copy()


class RowSpace:
    """Incrementally grown subspace of F_p^n kept in reduced echelon form."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self._rows: List[np.ndarray] = []
        self._pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence[int]) -> np.ndarray:
        w = np.array(v, dtype=np.int64) % self.p
        for row, pc in zip(self._rows, self._pivots):
            if w[pc] != 0:
                w = (w - w[pc] * row) % self.p
        return w

    def contains(self, v: Sequence[int]) -> bool:
        return not self.reduce(v).any()

    def add(self, v: Sequence[int]) -> bool:
        """Adds v; returns False when v was already in the span."""
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        w = (w * pow(int(w[pc]), -1, self.p)) % self.p
        for i, row in enumerate(self._rows):
            if row[pc] != 0:
                self._rows[i] = (row - row[pc] * w) % self.p
        self._rows.append(w)
        self._pivots.append(pc)
        return True

    def basis(self) -> List[np.ndarray]:
        order = np.argsort(self._pivots, kind="stable")
        return [self._rows[i].copy() for i in order]
