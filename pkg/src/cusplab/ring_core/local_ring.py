"""The length-two local ring o_2 = o / p^2 and its characters.

Two models are provided, both with residue field F_p:

* ``zp2``  -- the integers modulo p^2 (uniformizer p),
* ``dual`` -- the dual numbers F_p[t]/(t^2) (uniformizer t).

An element with coordinates ``(a0, a1)`` in the transversal ``{1, pi}`` is
stored as the integer code ``a0 + p*a1``.  For ``zp2`` that code *is* the
residue class, so ring operations are integer operations mod p^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from cusplab.ring_core.cyclotomic import Cyclotomic
from cusplab.ring_core.fields import FiniteField
from cusplab.ring_core.linalg import inv_mod, leibniz_terms

VARIANTS = ("zp2", "dual")
VARIANT_ALIASES = {"zp2": "zp2", "integer-lift": "zp2", "dual": "dual", "dual-numbers": "dual"}


class RingElem(NamedTuple):
    a0: int
    a1: int


@dataclass(frozen=True)
class LocalRing:
    """o_2 for residue field F_p; ``variant`` is ``"zp2"`` or ``"dual"``."""

    p: int
    variant: str = "zp2"

    def __post_init__(self):
        object.__setattr__(self, "variant", VARIANT_ALIASES.get(self.variant, self.variant))
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"p={self.p} is not prime")

    @property
    def q(self) -> int:
        return self.p

    @property
    def size(self) -> int:
        return self.p * self.p

    @property
    def uniformizer(self) -> int:
        return self.p

    @cached_property
    def residue_field(self) -> FiniteField:
        return FiniteField.prime(self.p)

    # -- coordinates ----------------------------------------------------
    def element(self, a0: int, a1: int = 0) -> int:
        return (a0 % self.p) + self.p * (a1 % self.p)

    def coords(self, x: int) -> RingElem:
        return RingElem(int(x) % self.p, int(x) // self.p)

    def reduce(self, x):
        """Reduction onto F_p; kernel is pi*o_2."""
        return np.asarray(x) % self.p if np.ndim(x) else int(x) % self.p

    def lift(self, x):
        """The section a -> a + 0*pi of :meth:`reduce`."""
        return np.asarray(x) % self.p if np.ndim(x) else int(x) % self.p

    def pi_times(self, m):
        """pi * lift(m); depends only on m mod p."""
        return self.p * (np.asarray(m) % self.p) if np.ndim(m) else self.p * (int(m) % self.p)

    def pi_quotient(self, x):
        """m mod p for x = pi*m (x must lie in pi*o_2)."""
        return np.asarray(x) // self.p if np.ndim(x) else int(x) // self.p

    # -- arithmetic (vectorised on code arrays) ---------------------------
    def add(self, a, b):
        if self.variant == "zp2":
            return (np.asarray(a) + b) % self.size
        p = self.p
        a, b = np.asarray(a), np.asarray(b)
        return (a % p + b % p) % p + p * ((a // p + b // p) % p)

    def neg(self, a):
        if self.variant == "zp2":
            return (-np.asarray(a)) % self.size
        p = self.p
        a = np.asarray(a)
        return (-(a % p)) % p + p * ((-(a // p)) % p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.variant == "zp2":
            return (np.asarray(a, dtype=np.int64) * b) % self.size
        p = self.p
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        a0, a1, b0, b1 = a % p, a // p, b % p, b // p
        return (a0 * b0) % p + p * ((a0 * b1 + a1 * b0) % p)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.variant == "zp2":
            return (A @ B) % self.size
        p = self.p
        A0, A1, B0, B1 = A % p, A // p, B % p, B // p
        return (A0 @ B0) % p + p * ((A0 @ B1 + A1 @ B0) % p)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def det(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[-1]
        total = np.zeros(A.shape[:-2], dtype=np.int64)
        for perm, sign in leibniz_terms(n):
            term = np.ones(A.shape[:-2], dtype=np.int64)
            for i, j in enumerate(perm):
                term = self.mul(term, A[..., i, j])
            total = self.add(total, term if sign > 0 else self.neg(term))
        return total

    def trace(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        total = np.zeros(A.shape[:-2], dtype=np.int64)
        for i in range(A.shape[-1]):
            total = self.add(total, A[..., i, i])
        return total

    def inv(self, A) -> np.ndarray:
        """Matrix inverse over o_2 via Newton lifting of the residue inverse."""
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[-1]
        X = self.lift(inv_mod(self.reduce(A), self.p))
        two_I = np.broadcast_to(self.identity(n) * 2 % self.size if self.variant == "zp2"
                                else self.lift(2 * self.identity(n)), A.shape)
        return self.matmul(X, self.sub(two_I, self.matmul(A, X)))

    # -- units ----------------------------------------------------------
    @cached_property
    def units(self) -> np.ndarray:
        codes = np.arange(self.size)
        return codes[codes % self.p != 0]

    @cached_property
    def unit_generator(self) -> int:
        """A generator of the cyclic group o_2^x (of order p(p-1))."""
        n = len(self.units)
        for g in self.units:
            x, order = int(g), 1
            while x != 1:
                x = int(self.mul(x, g))
                order += 1
            if order == n:
                return int(g)
        raise AssertionError("o_2^x is cyclic for residue field F_p")

    @cached_property
    def unit_log(self) -> np.ndarray:
        """Discrete log to base :attr:`unit_generator`; -1 on non-units."""
        out = np.full(self.size, -1, dtype=np.int64)
        x = 1
        for k in range(len(self.units)):
            out[x] = k
            x = int(self.mul(x, self.unit_generator))
        return out

    def __str__(self):
        return f"Z/{self.size}" if self.variant == "zp2" else f"F{self.p}[t]/t^2"


@dataclass(frozen=True)
class AdditiveCharacter:
    """psi_u(x) = psi_0(u x) with psi_0 the fixed normalised character.

    ``zp2``:  psi_0(x) = exp(2 pi i x / p^2);  ``dual``: psi_0(a + b t) = exp(2 pi i b / p).
    Both are trivial on p^2 (= 0) and non-trivial on pi*o_2.
    """

    ring: LocalRing
    scale: int = 1

    def __post_init__(self):
        if self.scale % self.ring.p == 0:
            raise ValueError("scale must be a unit")

    @property
    def order(self) -> int:
        return self.ring.size if self.ring.variant == "zp2" else self.ring.p

    def exponent(self, x):
        """psi(x) = zeta_order ** exponent(x)."""
        y = self.ring.mul(x, self.scale)
        if self.ring.variant == "zp2":
            return y
        return y // self.ring.p

    def __call__(self, x) -> Cyclotomic:
        return Cyclotomic.root(self.order, int(self.exponent(x)))


def psi_eval(psi: AdditiveCharacter, x) -> Cyclotomic:
    return psi(x)


@dataclass(frozen=True)
class UnitCharacter:
    """chi_j : o_2^x -> C^x, sending the fixed generator g to zeta_N^j (N = |o_2^x|)."""

    ring: LocalRing
    index: int

    @property
    def order(self) -> int:
        return len(self.ring.units)

    @property
    def generator_image(self) -> Cyclotomic:
        return Cyclotomic.root(self.order, self.index)

    def exponent(self, u):
        logs = self.ring.unit_log[np.asarray(u)]
        if np.any(logs < 0):
            raise ValueError("not a unit")
        return (logs * self.index) % self.order

    def __call__(self, u) -> Cyclotomic:
        return Cyclotomic.root(self.order, int(self.exponent(u)))

    @property
    def is_trivial(self) -> bool:
        return self.index % self.order == 0


def unit_characters(ring: LocalRing) -> list[UnitCharacter]:
    return [UnitCharacter(ring, j) for j in range(len(ring.units))]


# -- the quadratic extension F_{q^2} = F_q(eta) ---------------------------

DEFAULT_ETA_POLY = {2: (1, 1, 1), 3: (1, 0, 1)}


def quadratic_extension(p: int, eta_poly=None) -> FiniteField:
    """F_{p^2} with basis {1, eta}; ``eta_poly`` is eta's monic minimal polynomial."""
    fp = FiniteField.prime(p)
    if eta_poly is None:
        eta_poly = DEFAULT_ETA_POLY.get(p) or fp.first_irreducible(2)
    return FiniteField.extension(fp, eta_poly)


def embed_fq2(field: FiniteField, xi: int) -> np.ndarray:
    """Matrix of multiplication by xi on F_q^2 in the basis {1, eta}."""
    p = field.p
    a, b = xi % p, xi // p
    c0, c1, _ = field.modulus
    companion = np.array([[0, (-c0) % p], [1, (-c1) % p]], dtype=np.int64)
    return (a * np.eye(2, dtype=np.int64) + b * companion) % p


def unembed_fq2(field: FiniteField, block: np.ndarray) -> np.ndarray:
    """Inverse of :func:`embed_fq2` on blocks commuting with the companion matrix."""
    block = np.asarray(block)
    return block[..., 0, 0] + field.p * block[..., 1, 0]
