"""Exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` integer arrays whose entries are kept reduced
into ``[0, p)``.  Elimination uses a fixed pivot order so every result is
reproducible bit for bit.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import InputError

DEFAULT_PRIME = 5


def fp(data, p: int) -> np.ndarray:
    """Coerce ``data`` to an int64 array reduced mod ``p``."""
    arr = np.array(data, dtype=np.int64)
    return np.mod(arr, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``m`` and its pivot columns."""
    a = np.mod(np.array(m, dtype=np.int64).reshape(np.shape(m)), p)
    if a.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got shape {a.shape}")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    if np.size(m) == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right null space ``{v : m v = 0}``.

    The vector attached to each free column has a 1 in that column, so the
    basis is canonical for a given matrix.
    """
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [identity(cols)[:, j].copy() for j in range(cols)]
    r, pivots = rref(m, p)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-r[i, f]) % p
        basis.append(v)
    return basis


def solve(m: np.ndarray, b: Sequence[int], p: int) -> Optional[np.ndarray]:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    m = np.asarray(m, dtype=np.int64)
    b = np.mod(np.asarray(b, dtype=np.int64).reshape(-1), p)
    if m.ndim != 2 or m.shape[0] != b.shape[0]:
        raise InputError(f"dimension mismatch: matrix {m.shape} vs rhs of length {b.shape[0]}")
    rows, cols = m.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise InputError(f"cannot invert non-square matrix of shape {m.shape}")
    if n == 0:
        return zeros(0, 0)
    r, pivots = rref(np.concatenate([m, identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return r[:, n:].copy()


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the row space."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return zeros(0, m.shape[1] if m.ndim == 2 else 0)
    r, pivots = rref(m, p)
    return r[: len(pivots)].copy()


def in_span(vectors: Sequence[np.ndarray], v: np.ndarray, p: int) -> bool:
    """Whether ``v`` is a linear combination of ``vectors``."""
    v = np.mod(np.asarray(v, dtype=np.int64).reshape(-1), p)
    if not v.any():
        return True
    if len(vectors) == 0:
        return False
    cols = np.stack([np.asarray(u, dtype=np.int64).reshape(-1) for u in vectors], axis=1)
    return solve(cols, v, p) is not None


def span_dim(vectors: Sequence[np.ndarray], p: int) -> int:
    if len(vectors) == 0:
        return 0
    return rank(np.stack([np.asarray(u).reshape(-1) for u in vectors]), p)


def complement_indices(vectors: Sequence[np.ndarray], candidates: Sequence[np.ndarray], p: int) -> list[int]:
    """Greedily pick candidates that extend ``span(vectors)``; returns their positions."""
    chosen: list[int] = []
    current = [np.asarray(u).reshape(-1) for u in vectors]
    d = span_dim(current, p)
    for i, c in enumerate(candidates):
        trial = current + [np.asarray(c).reshape(-1)]
        dt = span_dim(trial, p)
        if dt > d:
            chosen.append(i)
            current = trial
            d = dt
    return chosen
