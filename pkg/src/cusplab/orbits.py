"""Adjoint orbits in M_n(F_q): characteristic polynomials, factorisation,
regularity and the quadratic-primary orbit representatives.

Polynomials are tuples of F_p residues, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from cusplab.matgroup import (
    ExplicitGroup,
    GroupContext,
    conjugacy_orbit,
    residue_centralizer,
    residue_gl_order,
)
from cusplab.ring_core.fields import FiniteField
from cusplab.ring_core.linalg import det_mod, encode, matmul_mod, nullspace_mod
from cusplab.ring_core.local_ring import DEFAULT_ETA_POLY, embed_fq2, quadratic_extension

Poly = tuple[int, ...]


def char_poly_batch(B: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of det(X I - B), lowest degree first, shape (..., n+1)."""
    B = np.asarray(B, dtype=np.int64) % p
    n = B.shape[-1]
    out = np.zeros(B.shape[:-2] + (n + 1,), dtype=np.int64)
    out[..., n] = 1
    for k in range(1, n + 1):
        e_k = np.zeros(B.shape[:-2], dtype=np.int64)
        for idx in combinations(range(n), k):
            minor = B[..., idx, :][..., :, idx]
            e_k = (e_k + det_mod(minor, p)) % p
        out[..., n - k] = ((-1) ** k * e_k) % p
    return out


def char_poly(beta, p: int) -> Poly:
    return tuple(int(c) for c in char_poly_batch(np.asarray(beta)[None], p)[0])


def poly_eval_matrix(f: Poly, beta: np.ndarray, p: int) -> np.ndarray:
    n = beta.shape[-1]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(f):
        acc = (matmul_mod(acc, beta, p) + c * np.eye(n, dtype=np.int64)) % p
    return acc


def factor(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial over F_p into monic irreducibles (trial division)."""
    F = FiniteField.prime(p)
    f = F.poly_trim(f)
    if not f or f[-1] != 1:
        raise ValueError("factor() expects a monic polynomial")
    out = []
    deg = 1
    while len(f) > 1:
        if 2 * deg > len(f) - 1:
            out.append((f, 1))
            break
        for g in F.irreducibles(deg):
            mult = 0
            while True:
                quo, rem = F.poly_divmod(f, g)
                if rem:
                    break
                f, mult = quo, mult + 1
            if mult:
                out.append((g, mult))
        deg += 1
    merged: dict[Poly, int] = {}
    for g, m in out:
        merged[g] = merged.get(g, 0) + m
    return sorted(merged.items(), key=lambda t: (len(t[0]), t[0]))


def expand(factors: list[tuple[Poly, int]], p: int) -> Poly:
    F = FiniteField.prime(p)
    acc: Poly = (1,)
    for g, m in factors:
        for _ in range(m):
            acc = F.poly_mul(acc, g)
    return acc


def minimal_poly(beta, p: int) -> Poly:
    """Smallest-degree monic divisor of the characteristic polynomial killing beta."""
    beta = np.asarray(beta, dtype=np.int64) % p
    facs = factor(char_poly(beta, p), p)
    candidates = []
    for mults in product(*[range(m + 1) for _, m in facs]):
        cand = [(g, k) for (g, _), k in zip(facs, mults) if k]
        poly = expand(cand, p)
        candidates.append((len(poly), poly))
    for _, poly in sorted(candidates):
        if not np.any(poly_eval_matrix(poly, beta, p)):
            return poly
    raise AssertionError("Cayley-Hamilton failed")


def companion(f: Poly, p: int) -> np.ndarray:
    """Multiplication by X on F_p[X]/(f) in the basis 1, X, ..., X^(n-1)."""
    n = len(f) - 1
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        C[i + 1, i] = 1
    for i in range(n):
        C[i, n - 1] = (-f[i]) % p
    return C


@dataclass(frozen=True)
class OrbitClass:
    representative: np.ndarray
    p: int
    char_poly: Poly
    factorization: tuple[tuple[Poly, int], ...]
    min_poly: Poly
    centralizer_order: int

    @property
    def n(self) -> int:
        return self.representative.shape[0]

    @property
    def primary(self) -> bool:
        return len(self.factorization) == 1

    @property
    def regular(self) -> bool:
        return self.min_poly == self.char_poly

    @property
    def strongly_cuspidal_eligible(self) -> bool:
        return self.factorization == ((self.char_poly, 1),) and len(self.char_poly) - 1 == self.n

    @property
    def orbit_size(self) -> int:
        return residue_gl_order(self.n, self.p) // self.centralizer_order

    def invariants(self) -> tuple:
        return (self.char_poly, self.min_poly, self.centralizer_order)

    def __eq__(self, other):
        if not isinstance(other, OrbitClass):
            return NotImplemented
        return self.p == other.p and self.invariants() == other.invariants()

    def __hash__(self):
        return hash((self.p, self.invariants()))

    def summary(self) -> dict:
        return {
            "representative": self.representative.tolist(),
            "char_poly": list(self.char_poly),
            "factorization": [[list(g), m] for g, m in self.factorization],
            "min_poly": list(self.min_poly),
            "centralizer_order": self.centralizer_order,
            "orbit_size": self.orbit_size,
            "primary": self.primary,
            "regular": self.regular,
            "strongly_cuspidal_eligible": self.strongly_cuspidal_eligible,
        }


def classify(beta, p: int) -> OrbitClass:
    beta = np.array(beta, dtype=np.int64) % p
    beta.setflags(write=False)
    cp = char_poly(beta, p)
    return OrbitClass(
        representative=beta,
        p=p,
        char_poly=cp,
        factorization=tuple(factor(cp, p)),
        min_poly=minimal_poly(beta, p),
        centralizer_order=len(residue_centralizer(beta, p)),
    )


def centralizer(ctx: GroupContext, beta) -> ExplicitGroup:
    """C(beta) in GL_n(F_q), returned as an explicit group of lifted matrices."""
    els = residue_centralizer(np.asarray(beta), ctx.p, ctx.cap)
    return ExplicitGroup(ctx, ctx.lift(els), tag=f"C({int(encode(np.asarray(beta) % ctx.p, ctx.p))})")


def are_conjugate(a, b, p: int) -> bool:
    """Brute-force test for x in GL_n(F_p) with x a = b x."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    n = a.shape[0]
    E = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    M = ((E @ a - b @ E) % p).reshape(n * n, n * n).T
    basis = nullspace_mod(M, p)
    if not len(basis):
        return False
    coeffs = np.array(list(product(range(p), repeat=len(basis))), dtype=np.int64)
    mats = ((coeffs @ basis) % p).reshape(-1, n, n)
    return bool(np.any(det_mod(mats, p) != 0))


def orbit_reps_quadratic(p: int, eta_poly=None) -> tuple[np.ndarray, np.ndarray]:
    """beta_1 = [[eta, 1], [0, eta]] and beta_2 = [[eta, 0], [0, eta]] in M_4(F_p)."""
    field = quadratic_extension(p, eta_poly)
    eta = embed_fq2(field, p)  # code p is the basis element eta
    one = np.eye(2, dtype=np.int64)
    zero = np.zeros((2, 2), dtype=np.int64)
    beta1 = np.block([[eta, one], [zero, eta]])
    beta2 = np.block([[eta, zero], [zero, eta]])
    return beta1, beta2


def eta_polynomials(p: int) -> list[Poly]:
    """All admissible minimal polynomials for eta; the default comes first."""
    polys = FiniteField.prime(p).irreducibles(2)
    default = DEFAULT_ETA_POLY.get(p)
    return sorted(polys, key=lambda f: f != default)


def quartic_orbit_reps(p: int) -> list[np.ndarray]:
    """Companion matrices of the monic irreducible quartics over F_p."""
    return [companion(f, p) for f in FiniteField.prime(p).irreducibles(4)]


@dataclass(frozen=True)
class CensusOrbit:
    representative: np.ndarray
    size: int
    centralizer_order: int
    regular: bool


def orbit_census(f: Poly, p: int, n: int = 4) -> tuple[int, list[CensusOrbit]]:
    """Split all matrices in M_n(F_p) with characteristic polynomial f into
    conjugacy orbits; returns (number of such matrices, orbits)."""
    total = p ** (n * n)
    if total > 1 << 22:
        raise ValueError("exhaustive census only at desk scale")
    codes = np.arange(total, dtype=np.int64)
    mats = ((codes[:, None] // p ** np.arange(n * n)) % p).reshape(-1, n, n)
    cps = char_poly_batch(mats, p)
    hit = np.all(cps == np.array(f), axis=-1)
    pending = {int(c) for c in encode(mats[hit], p)}
    count = len(pending)
    orbits = []
    while pending:
        k = min(pending)
        rep = mats[k]
        orb, _ = conjugacy_orbit(rep, p)
        keys = set(encode(orb, p).tolist())
        if not keys <= pending:
            raise AssertionError("conjugacy orbit left the characteristic-polynomial fibre")
        pending -= keys
        cls = classify(rep, p)
        orbits.append(CensusOrbit(rep, len(keys), cls.centralizer_order, cls.regular))
    return count, orbits
