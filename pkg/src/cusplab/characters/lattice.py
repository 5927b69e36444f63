"""Integer relation lattices: incremental echelon form and Smith decomposition."""

from __future__ import annotations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class RowEchelon:
    """Incremental integer row echelon form with a carried auxiliary part.

    Rows are ``(e, aux)`` with ``e`` in Z^r and ``aux`` in (Z/m)^k.  Only
    unimodular row operations are used, so the rows that reduce to ``e = 0``
    (kept in :attr:`zero_aux` when their aux part is nonzero) span the image
    of the left kernel of the relation matrix.
    """

    def __init__(self, r: int, aux_modulus: int):
        self.r = r
        self.m = aux_modulus
        self.pivots: dict[int, tuple[list[int], list[int]]] = {}
        self.zero_aux: list[list[int]] = []

    def _combine(self, u, v, s, t):
        return ([s * a + t * b for a, b in zip(u[0], v[0])],
                [(s * a + t * b) % self.m for a, b in zip(u[1], v[1])])

    def add(self, e, aux) -> None:
        row = ([int(x) for x in e], [int(x) % self.m for x in aux])
        for c in range(self.r):
            x = row[0][c]
            if x == 0:
                continue
            if c not in self.pivots:
                if x < 0:
                    row = ([-a for a in row[0]], [(-a) % self.m for a in row[1]])
                self.pivots[c] = row
                return
            piv = self.pivots[c]
            a = piv[0][c]
            g, s, t = egcd(a, x)
            self.pivots[c] = self._combine(piv, row, s, t)
            row = self._combine(piv, row, -x // g, a // g)
        if any(row[1]):
            self.zero_aux.append(row[1])

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def matrix(self) -> tuple[list[list[int]], list[list[int]]]:
        cols = sorted(self.pivots)
        return [self.pivots[c][0] for c in cols], [self.pivots[c][1] for c in cols]


def smith(A: list[list[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """(d, P, Q) with P A Q = diag(d), P and Q unimodular, A square."""
    k = len(A)
    if k == 0:
        return [], [], []
    D, P, Q = smith_normal_decomp(Matrix(A), domain=ZZ)
    d = [int(D[i, i]) for i in range(k)]
    P = [[int(P[i, j]) for j in range(k)] for i in range(k)]
    for i in range(k):
        if d[i] < 0:
            d[i] = -d[i]
            P[i] = [-x for x in P[i]]
    return d, P, [[int(Q[i, j]) for j in range(k)] for i in range(k)]
