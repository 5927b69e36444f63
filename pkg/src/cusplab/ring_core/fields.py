"""Small finite fields as lookup tables.

Elements are encoded as integers ``0 <= code < size``.  A prime field uses
the residue itself; an extension of ``base`` by a monic polynomial of degree
``d`` encodes ``a_0 + a_1 x + ... + a_{d-1} x^{d-1}`` as
``sum a_i * base.size**i``, so base elements keep their codes.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np


class FiniteField:
    def __init__(self, p: int, size: int, add: np.ndarray, mul: np.ndarray,
                 base: FiniteField | None = None, modulus: tuple[int, ...] | None = None):
        self.p = p
        self.size = size
        self.add_table = add
        self.mul_table = mul
        self.base = base
        self.modulus = modulus
        self.neg_table = np.argmin(add, axis=1)  # a + b == 0
        inv = np.zeros(size, dtype=np.int64)
        for a in range(1, size):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.setflags(write=False)

    # -- construction -------------------------------------------------
    @classmethod
    def prime(cls, p: int) -> FiniteField:
        r = np.arange(p)
        return cls(p, p, (r[:, None] + r[None, :]) % p, (r[:, None] * r[None, :]) % p)

    @classmethod
    def extension(cls, base: FiniteField, modulus) -> FiniteField:
        """``base[x] / (modulus)``; ``modulus`` is monic, lowest degree first."""
        modulus = tuple(int(c) for c in modulus)
        d = len(modulus) - 1
        if modulus[-1] != 1 or d < 1:
            raise ValueError("modulus must be monic of positive degree")
        if not base.is_irreducible(modulus):
            raise ValueError(f"{modulus} is reducible over F_{base.size}")
        b = base.size
        size = b**d
        coords = [tuple((c // b**i) % b for i in range(d)) for c in range(size)]

        def encode(v):
            return sum(int(x) * b**i for i, x in enumerate(v))

        add = np.zeros((size, size), dtype=np.int64)
        mul = np.zeros((size, size), dtype=np.int64)
        for u in range(size):
            for v in range(u, size):
                s = encode(base.add_table[coords[u][i], coords[v][i]] for i in range(d))
                prod = base.poly_mul(coords[u], coords[v])
                r = base.poly_mod(prod, modulus)
                r = tuple(r) + (0,) * (d - len(r))
                add[u, v] = add[v, u] = s
                mul[u, v] = mul[v, u] = encode(r)
        return cls(base.p, size, add, mul, base=base, modulus=modulus)

    @classmethod
    def of_order(cls, p: int, degree: int) -> FiniteField:
        """F_{p^degree} built directly over F_p with the first irreducible modulus."""
        fp = cls.prime(p)
        if degree == 1:
            return fp
        return cls.extension(fp, fp.first_irreducible(degree))

    # -- element helpers ----------------------------------------------
    def add(self, a, b):
        return self.add_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def inv(self, a):
        return self.inv_table[a]

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return int(self.exp_table[(self.log_table[a] * k) % (self.size - 1)])

    @cached_property
    def generator(self) -> int:
        """Smallest code generating the multiplicative group."""
        n = self.size - 1
        for g in range(1, self.size):
            x, order = g, 1
            while x != 1:
                x = int(self.mul_table[x, g])
                order += 1
            if order == n:
                return g
        raise AssertionError("no primitive element")

    @cached_property
    def exp_table(self) -> np.ndarray:
        out = np.zeros(self.size - 1, dtype=np.int64)
        x = 1
        for k in range(self.size - 1):
            out[k] = x
            x = int(self.mul_table[x, self.generator])
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        out = np.full(self.size, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.size - 1)
        return out

    def frobenius(self, a: int, power: int = 1) -> int:
        """a -> a^(base.size^power) for an extension, a^(p^power) otherwise."""
        q = self.base.size if self.base is not None else self.p
        return self.power(a, q**power)

    # -- polynomials over this field (tuples, lowest degree first) -----
    def poly_trim(self, f) -> tuple[int, ...]:
        f = list(int(c) for c in f)
        while f and f[-1] == 0:
            f.pop()
        return tuple(f)

    def poly_mul(self, f, g) -> tuple[int, ...]:
        if not f or not g:
            return ()
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] = int(self.add_table[out[i + j], self.mul_table[a, b]])
        return self.poly_trim(out)

    def poly_divmod(self, f, g) -> tuple[tuple[int, ...], tuple[int, ...]]:
        f = list(self.poly_trim(f))
        g = self.poly_trim(g)
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = int(self.inv_table[g[-1]])
        q = [0] * max(len(f) - len(g) + 1, 0)
        while len(f) >= len(g) and f:
            c = int(self.mul_table[f[-1], inv_lead])
            shift = len(f) - len(g)
            q[shift] = c
            for j, b in enumerate(g):
                f[shift + j] = int(self.sub(f[shift + j], self.mul_table[c, b]))
            f = list(self.poly_trim(f))
        return self.poly_trim(q), tuple(f)

    def poly_mod(self, f, g) -> tuple[int, ...]:
        return self.poly_divmod(f, g)[1]

    def poly_eval(self, f, x: int) -> int:
        acc = 0
        for c in reversed(f):
            acc = int(self.add_table[self.mul_table[acc, x], c])
        return acc

    def monic_polys(self, degree: int):
        for low in product(range(self.size), repeat=degree):
            yield tuple(low) + (1,)

    def is_irreducible(self, f) -> bool:
        f = self.poly_trim(f)
        deg = len(f) - 1
        if deg <= 0:
            return False
        for d in range(1, deg // 2 + 1):
            for g in self.monic_polys(d):
                if not self.poly_mod(f, g):
                    return False
        return True

    def first_irreducible(self, degree: int) -> tuple[int, ...]:
        for f in self.monic_polys(degree):
            if self.is_irreducible(f):
                return f
        raise AssertionError("unreachable")

    def irreducibles(self, degree: int) -> list[tuple[int, ...]]:
        return [f for f in self.monic_polys(degree) if self.is_irreducible(f)]

    def __repr__(self):
        return f"FiniteField(size={self.size}, modulus={self.modulus})"
