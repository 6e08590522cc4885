"""Small dense linear algebra over GF(2) on uint8 numpy arrays."""

from __future__ import annotations

import numpy as np


def as_gf2(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) & 1


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = as_gf2(a).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    a = as_gf2(a)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(a: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {v : a @ v = 0 mod 2}."""
    a = as_gf2(a)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.uint8)
    r, pivots = rref(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, p in enumerate(pivots):
            basis[row, p] = r[i, f]
    return basis


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution x of a @ x = b mod 2, or None if the system is inconsistent."""
    a = as_gf2(a)
    b = as_gf2(b).reshape(-1)
    rows, cols = a.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.uint8)
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = r[i, cols]
    return x
