"""Exact dense linear algebra over GF(p) on int64 numpy arrays.

Every function takes the prime ``p`` explicitly and returns fresh arrays with
entries in [0, p). Elimination picks the first nonzero pivot in a fixed row
order, so all returned bases are reproducible.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)


def mod_p(a, p: int) -> np.ndarray:
    return np.asarray(np.asarray(a, dtype=np.int64) % p, dtype=np.int64)


def as_matrix(m, p: int) -> np.ndarray:
    """Coerce lists and vectors to a reduced 2-d array (a vector becomes one row)"""
    a = mod_p(m, p)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"Expected a matrix, got an array of shape {a.shape}")
    return a


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_scalar(a, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, p - 2, p)


def mat_mul(a, b, p: int) -> np.ndarray:
    return mod_p(np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64), p)


def rref(m, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(p). Returns (R, pivot_cols)."""
    a = as_matrix(m, p).copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * inv_scalar(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p: int) -> int:
    m = as_matrix(m, p)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m, p: int) -> Tuple[np.ndarray, List[int]]:
    """Kernel basis as columns together with the free variable of each column.

    Column k is 1 at free[k] and 0 at every other free position, so the
    coordinates of a kernel vector are its entries at the free positions.
    """
    m = as_matrix(m, p)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols), list(range(cols))
    r, pivots = rref(m, p)
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    basis = zeros(cols, len(free))
    if free:
        basis[free, list(range(len(free)))] = 1
        if pivots:
            basis[pivots, :] = (-r[: len(pivots)][:, free]) % p
    return basis, free


def kernel_basis(m, p: int) -> np.ndarray:
    """Columns spanning the right kernel; count is cols - rank"""
    return nullspace(m, p)[0]


def solve(a, b, p: int) -> Optional[np.ndarray]:
    """One solution x of a @ x = b (free variables set to 0), or None if inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    a = mod_p(a, p)
    b = mod_p(b, p)
    if a.ndim != 2:
        raise ValueError(f"Coefficient matrix must be 2-d, got shape {a.shape}")
    vector = b.ndim == 1
    rhs = b.reshape(-1, 1) if vector else b
    if rhs.shape[0] != a.shape[0]:
        raise ValueError(f"Shape mismatch: {a.shape} against right-hand side {b.shape}")
    n = a.shape[1]
    k = rhs.shape[1]
    if a.shape[0] == 0:
        x = zeros(n, k)
    else:
        r, pivots = rref(np.concatenate([a, rhs], axis=1), p)
        if pivots and pivots[-1] >= n:
            return None
        x = zeros(n, k)
        if pivots:
            x[pivots, :] = r[: len(pivots), n:]
    return x.reshape(-1) if vector else x


def inverse(m, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over GF(p)"""
    m = mod_p(m, p)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise ValueError(f"Only square matrices are invertible, got shape {m.shape}")
    if n == 0:
        return zeros(0, 0)
    r, pivots = rref(np.concatenate([m, identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("Matrix is singular mod p")
    return r[:, n:].copy()


def is_invertible(m, p: int) -> bool:
    m = mod_p(m, p)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return m.shape[0] == 0 or rank(m, p) == m.shape[0]


def independent_columns(m, p: int) -> List[int]:
    """Indices of the greedy left-to-right maximal independent set of columns"""
    m = mod_p(m, p)
    if m.size == 0:
        return []
    return rref(m, p)[1]


def column_space(m, p: int) -> np.ndarray:
    """Basis of the column space chosen among the columns of m"""
    m = mod_p(m, p)
    if m.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {m.shape}")
    return m[:, independent_columns(m, p)]


def complement_columns(sub, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing span(sub) to GF(p)^n"""
    sub = mod_p(sub, p)
    if sub.size == 0:
        return identity(n)
    pivots = set(independent_columns(sub.reshape(n, -1).T, p))
    keep = [j for j in range(n) if j not in pivots]
    return identity(n)[:, keep]


def extend_columns(sub, candidates, p: int) -> List[int]:
    """Indices of candidate columns that extend the independent columns of sub"""
    sub = mod_p(sub, p)
    candidates = mod_p(candidates, p)
    k = sub.shape[1]
    if candidates.shape[1] == 0:
        return []
    stacked = np.concatenate([sub, candidates], axis=1)
    return [c - k for c in independent_columns(stacked, p) if c >= k]


def in_span(basis, v, p: int) -> bool:
    basis = mod_p(basis, p)
    v = mod_p(v, p)
    if not v.any():
        return True
    if basis.shape[1] == 0:
        return False
    return solve(basis, v, p) is not None


def intersect(u, v, p: int) -> np.ndarray:
    """Basis of span(u) ∩ span(v) for column bases u, v of the same ambient space"""
    u = mod_p(u, p)
    v = mod_p(v, p)
    if u.shape[1] == 0 or v.shape[1] == 0:
        return zeros(u.shape[0], 0)
    ker = kernel_basis(np.concatenate([u, (-v) % p], axis=1), p)
    return column_space(mat_mul(u, ker[: u.shape[1]], p), p)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def block_diag(blocks) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
