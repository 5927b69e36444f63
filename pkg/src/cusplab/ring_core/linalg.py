"""Batched small-matrix linear algebra over F_p (p prime).

Matrices are integer numpy arrays of shape (..., n, n) with entries in
[0, p).  Everything is vectorised over the leading axes.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_terms(n: int):
    return [(perm, _perm_sign(perm)) for perm in permutations(range(n))]


def det_mod(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    total = np.zeros(A.shape[:-2], dtype=np.int64)
    for perm, sign in leibniz_terms(n):
        term = np.ones(A.shape[:-2], dtype=np.int64)
        for i, j in enumerate(perm):
            term = (term * A[..., i, j]) % p
        total = (total + sign * term) % p
    return total


def matmul_mod(A, B, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def inv_scalar_mod(x, p: int):
    return pow(int(x), p - 2, p) if np.ndim(x) == 0 else np.array(
        [pow(int(v), p - 2, p) for v in np.ravel(x)], dtype=np.int64).reshape(np.shape(x))


def adjugate_mod(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    if n == 1:
        return np.ones_like(A)
    adj = np.zeros_like(A)
    idx = list(range(n))
    for i in range(n):
        for j in range(n):
            rows = [r for r in idx if r != j]
            cols = [c for c in idx if c != i]
            minor = A[..., rows, :][..., :, cols]
            adj[..., i, j] = ((-1) ** (i + j) * det_mod(minor, p)) % p
    return adj


def inv_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Inverse of invertible matrices (batched); raises on a singular one."""
    d = det_mod(A, p)
    if np.any(d == 0):
        raise ZeroDivisionError("singular matrix mod p")
    dinv = np.vectorize(lambda x: pow(int(x), p - 2, p), otypes=[np.int64])(d)
    return (adjugate_mod(A, p) * dinv[..., None, None]) % p


def nullspace_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the right kernel {v : M v = 0} of a 2-D matrix."""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = [i for i in range(r, rows) if M[i, c]]
        if not nz:
            continue
        M[[r, nz[0]]] = M[[nz[0], r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-M[i, f]) % p
    return basis


def rank_mod(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    return M.shape[1] - len(nullspace_mod(M, p))


def span_mod(vectors: np.ndarray, p: int) -> np.ndarray:
    """Row-reduced basis of the span of the given row vectors."""
    M = np.array(vectors, dtype=np.int64) % p
    if M.size == 0:
        return M.reshape(0, M.shape[-1] if M.ndim == 2 else 0)
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        nz = [i for i in range(r, rows) if M[i, c]]
        if not nz:
            continue
        M[[r, nz[0]]] = M[[nz[0], r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
        if r == rows:
            break
    return M[:r]


def in_span_mod(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    if len(basis) == 0:
        return not np.any(np.asarray(v) % p)
    return len(span_mod(np.vstack([basis, np.atleast_2d(v)]), p)) == len(basis)


def encode(A: np.ndarray, base: int) -> np.ndarray:
    """Pack the trailing n x n entries (each < base) into one int64 key."""
    A = np.asarray(A, dtype=np.int64)
    flat = A.reshape(A.shape[:-2] + (-1,))
    weights = base ** np.arange(flat.shape[-1], dtype=np.int64)
    return flat @ weights


def decode(codes, base: int, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    digits = (codes[..., None] // base ** np.arange(n * n, dtype=np.int64)) % base
    return digits.reshape(codes.shape + (n, n))
