"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Values are kept in the power basis ``1, z, ..., z^(phi(m)-1)`` of a
primitive m-th root of unity ``z``, with rational coefficients, so equality
is decided exactly.  Sums of many roots of unity are best accumulated as an
integer histogram of exponents and normalised once with
:meth:`Cyclotomic.from_counts`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

import numpy as np


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def reduction_matrix(m: int) -> np.ndarray:
    """Row k holds the power-basis coordinates of z^k, for 0 <= k < m."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = np.zeros((m, deg), dtype=np.int64)
    cur = [0] * deg
    cur[0] = 1
    for k in range(m):
        rows[k] = cur
        # multiply by z and reduce with the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    rows.setflags(write=False)
    return rows


def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class Cyclotomic:
    """An element of Q(zeta_m) in normal form."""

    __slots__ = ("m", "coeffs")
    __hash__ = None  # equality crosses moduli, so no hash

    def __init__(self, m: int, coeffs):
        self.m = m
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != totient(m):
            raise ValueError(f"expected {totient(m)} coefficients for m={m}")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_counts(cls, m: int, counts) -> Cyclotomic:
        """Normalise sum_k counts[k] * z^k (k taken mod m)."""
        counts = np.asarray(counts)
        if counts.shape[-1] != m:
            counts = _fold(counts, m)
        if counts.dtype == object:
            R = reduction_matrix(m)
            coeffs = [sum((Fraction(c) * int(R[k, j]) for k, c in enumerate(counts) if c), Fraction(0))
                      for j in range(R.shape[1])]
            return cls(m, coeffs)
        return cls(m, (counts.astype(np.int64) @ reduction_matrix(m)).tolist())

    @classmethod
    def root(cls, m: int, k: int = 1) -> Cyclotomic:
        return cls(m, reduction_matrix(m)[k % m].tolist())

    @classmethod
    def rational(cls, value, m: int = 1) -> Cyclotomic:
        coeffs = [Fraction(0)] * totient(m)
        coeffs[0] = Fraction(value)
        return cls(m, coeffs)

    @classmethod
    def from_terms(cls, m: int, terms) -> Cyclotomic:
        """Build from ``(coefficient, exponent)`` pairs."""
        counts = np.zeros(m, dtype=object)
        counts[:] = 0
        for c, k in terms:
            counts[k % m] += c
        return cls.from_counts(m, counts)

    # -- modulus handling ---------------------------------------------
    def group_ring(self) -> list[Fraction]:
        """Coefficients as a length-m exponent histogram (not unique)."""
        out = [Fraction(0)] * self.m
        out[: len(self.coeffs)] = self.coeffs
        return out

    def lift(self, M: int) -> Cyclotomic:
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"{self.m} does not divide {M}")
        step = M // self.m
        counts = np.zeros(M, dtype=object)
        counts[:] = 0
        for k, c in enumerate(self.coeffs):
            if c:
                counts[k * step] += c
        return Cyclotomic.from_counts(M, counts)

    def _common(self, other) -> tuple[Cyclotomic, Cyclotomic]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.m)
        M = lcm(self.m, other.m)
        return self.lift(M), other.lift(M)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Rational)) or isinstance(other, Cyclotomic):
            a, b = self._common(other)
            return Cyclotomic(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Cyclotomic(self.m, [c * other for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        m = a.m
        counts = np.zeros(m, dtype=object)
        counts[:] = 0
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        counts[(i + j) % m] += x * y
        return Cyclotomic.from_counts(m, counts)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Cyclotomic(self.m, [c / other for c in self.coeffs])
        return NotImplemented

    def conjugate(self) -> Cyclotomic:
        counts = np.zeros(self.m, dtype=object)
        counts[:] = 0
        for k, c in enumerate(self.coeffs):
            if c:
                counts[(-k) % self.m] += c
        return Cyclotomic.from_counts(self.m, counts)

    # -- predicates ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = Cyclotomic.rational(other, self.m)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self):
        z = np.exp(2j * np.pi / self.m)
        return complex(sum(float(c) * z**k for k, c in enumerate(self.coeffs)))

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        terms = [f"{c}*z{self.m}^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"


def _fold(counts: np.ndarray, m: int) -> np.ndarray:
    out = np.zeros(counts.shape[:-1] + (m,), dtype=counts.dtype)
    if counts.dtype == object:
        out[...] = 0
    for k in range(counts.shape[-1]):
        out[..., k % m] += counts[..., k]
    return out


def normal_forms(counts: np.ndarray, m: int) -> np.ndarray:
    """Vectorised normal form of a batch of integer exponent histograms."""
    return np.asarray(counts, dtype=np.int64) @ reduction_matrix(m)
