"""Matrix groups over o_2 and their residue images.

A matrix over o_2 is an int64 array of ring codes (see
:mod:`cusplab.ring_core.local_ring`); batches carry leading axes.  Subgroups
of G = GL_n(o_2) are described symbolically.  Every descriptor used here has
the form ``{ s(a) (I + pi m) : a in Abar, m supported on a fixed mask }``
where ``s`` is the entrywise section of reduction, which gives exact orders,
enumeration and random sampling without touching G itself.

Double cosets A\\G/B with K_1 <= A are computed in GL_n(F_q): right cosets
of the centralizer C(beta) are identified with the conjugacy class of beta
(``Cx -> x^-1 beta x``) and B acts on that class by conjugation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from cusplab.ring_core.linalg import decode, det_mod, encode, inv_mod, matmul_mod, nullspace_mod
from cusplab.ring_core.local_ring import LocalRing

DEFAULT_CAP = 20_000_000
BATCH = 1 << 16


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class GroupContext:
    """G = GL_n(o_2) over a fixed ring, with an enumeration cap."""

    ring: LocalRing
    n: int = 4
    cap: int = DEFAULT_CAP

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def q(self) -> int:
        return self.ring.p

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=np.int64)

    @property
    def kernel_order(self) -> int:
        return self.q ** (self.n * self.n)

    def key(self, X) -> np.ndarray:
        return encode(X, self.ring.size)

    def from_key(self, codes) -> np.ndarray:
        return decode(codes, self.ring.size, self.n)

    def residue_key(self, Xbar) -> np.ndarray:
        return encode(Xbar, self.q)

    def reduce(self, X) -> np.ndarray:
        return np.asarray(X, dtype=np.int64) % self.p

    def lift(self, Xbar) -> np.ndarray:
        return np.asarray(Xbar, dtype=np.int64) % self.p

    def mul(self, A, B) -> np.ndarray:
        return self.ring.matmul(A, B)

    def inv(self, A) -> np.ndarray:
        return self.ring.inv(A)

    def conj(self, X, U) -> np.ndarray:
        """X U X^-1 (broadcasting)."""
        return self.mul(self.mul(X, U), self.inv(X))

    def kernel_element(self, m) -> np.ndarray:
        """I + pi*m for residue matrices m."""
        m = np.asarray(m, dtype=np.int64)
        return self.ring.add(np.broadcast_to(self.identity, m.shape), self.ring.pi_times(m))

    def kernel_log(self, K) -> np.ndarray:
        """m mod p for K = I + pi*m in K_1."""
        K = np.asarray(K, dtype=np.int64)
        return self.ring.pi_quotient(self.ring.sub(K, np.broadcast_to(self.identity, K.shape)))


def is_unit(ctx: GroupContext, M) -> np.ndarray | bool:
    """Invertibility over o_2 is invertibility of the reduction."""
    d = det_mod(ctx.reduce(M), ctx.p) != 0
    return bool(d) if np.ndim(d) == 0 else d


# -- residue-level helpers ------------------------------------------------

def _digit_rows(p: int, k: int) -> np.ndarray:
    """All vectors in F_p^k as rows."""
    return np.array(list(product(range(p), repeat=k)), dtype=np.int64).reshape(p**k, k)


def residue_gl_order(n: int, q: int) -> int:
    return prod(q**n - q**i for i in range(n))


def residue_gl_generators(n: int, p: int) -> np.ndarray:
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                g = np.eye(n, dtype=np.int64)
                g[i, j] = 1
                gens.append(g)
    if p > 2:
        prim = next(g for g in range(2, p)
                    if len({pow(g, k, p) for k in range(1, p)}) == p - 1)
        d = np.eye(n, dtype=np.int64)
        d[0, 0] = prim
        gens.append(d)
    return np.array(gens)


def residue_gl_elements(n: int, p: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All of GL_n(F_p), built column by column."""
    order = residue_gl_order(n, p)
    if order > cap:
        raise CapExceeded(f"|GL_{n}(F_{p})| = {order} exceeds cap {cap}")
    vecs = np.array(list(product(range(p), repeat=n)), dtype=np.int64)[:, ::-1]
    partial = np.zeros((1, n, 0), dtype=np.int64)
    for k in range(n):
        # span of the first k columns, for each partial matrix
        coeffs = _digit_rows(p, k)
        spans = (partial @ coeffs.T) % p  # (N, n, p^k)
        span_codes = encode(spans.transpose(0, 2, 1)[..., None], p)  # (N, p^k)
        vec_codes = encode(vecs[:, :, None], p)  # (p^n,)
        ok = ~(vec_codes[None, :, None] == span_codes[:, None, :]).any(-1)
        rows, cols = np.nonzero(ok)
        partial = np.concatenate([partial[rows], vecs[cols][:, :, None]], axis=2)
    return partial


def element_orders(elements: np.ndarray, p: int) -> np.ndarray:
    n = elements.shape[-1]
    ident = np.eye(n, dtype=np.int64)
    orders = np.zeros(len(elements), dtype=np.int64)
    power = elements.copy()
    k = 1
    while np.any(orders == 0):
        hit = (orders == 0) & np.all(power == ident, axis=(-1, -2))
        orders[hit] = k
        power = matmul_mod(power, elements, p)
        k += 1
    return orders


def closure_keys(gens: np.ndarray, p: int) -> set[int]:
    """Keys of the subgroup of GL_n(F_p) generated by ``gens``."""
    n = gens.shape[-1] if len(gens) else 0
    ident = np.eye(n, dtype=np.int64)[None]
    seen = {int(encode(ident, p)[0])}
    frontier = ident
    while len(frontier):
        new = matmul_mod(frontier[:, None], gens[None], p).reshape(-1, n, n)
        keys = encode(new, p)
        keys, first = np.unique(keys, return_index=True)
        fresh = np.array([k not in seen for k in keys.tolist()], dtype=bool)
        seen.update(keys[fresh].tolist())
        frontier = new[first[fresh]]
    return seen


def subgroup_generators(elements: np.ndarray, p: int) -> np.ndarray:
    """A small generating set, chosen greedily by decreasing element order."""
    if len(elements) <= 1:
        return elements[:0]
    n = elements.shape[-1]
    orders = element_orders(elements, p)
    keys = encode(elements, p)
    order_idx = np.lexsort((keys, -orders))
    gens: list[np.ndarray] = []
    generated: set[int] = {int(encode(np.eye(n, dtype=np.int64)[None], p)[0])}
    target = len(elements)
    for i in order_idx:
        if len(generated) == target:
            break
        if int(keys[i]) in generated:
            continue
        gens.append(elements[i])
        generated = closure_keys(np.array(gens), p)
    return np.array(gens).reshape(-1, n, n)


def residue_centralizer(beta: np.ndarray, p: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All invertible g with g beta = beta g, sorted by key."""
    beta = np.asarray(beta, dtype=np.int64) % p
    n = beta.shape[0]
    # linear map X -> X beta - beta X on column-stacked n^2 vectors
    E = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    images = (E @ beta - beta @ E) % p
    M = images.reshape(n * n, n * n).T
    basis = nullspace_mod(M, p)
    count = p ** len(basis)
    if count > cap:
        raise CapExceeded(f"centralizer span has {count} elements")
    coeffs = _digit_rows(p, len(basis))
    mats = ((coeffs @ basis) % p).reshape(-1, n, n)
    mats = mats[det_mod(mats, p) != 0]
    keys = encode(mats, p)
    return mats[np.argsort(keys)]


def conjugacy_orbit(beta: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbit {x^-1 beta x} with a transporter x for each element.

    Returns ``(orbit, transporters)`` with ``transporters[k]^-1 beta
    transporters[k] == orbit[k]`` and ``orbit[0] == beta``.
    """
    beta = np.asarray(beta, dtype=np.int64) % p
    n = beta.shape[0]
    gens = residue_gl_generators(n, p)
    gens_inv = inv_mod(gens, p)
    orbit = [beta[None]]
    trans = [np.eye(n, dtype=np.int64)[None]]
    seen = {int(encode(beta, p))}
    frontier, ftrans = beta[None], np.eye(n, dtype=np.int64)[None]
    while len(frontier):
        new = matmul_mod(matmul_mod(gens_inv[None], frontier[:, None], p), gens[None], p).reshape(-1, n, n)
        newt = matmul_mod(ftrans[:, None], gens[None], p).reshape(-1, n, n)
        keys = encode(new, p)
        keys, first = np.unique(keys, return_index=True)
        fresh = np.array([k not in seen for k in keys.tolist()], dtype=bool)
        seen.update(keys[fresh].tolist())
        frontier, ftrans = new[first[fresh]], newt[first[fresh]]
        orbit.append(frontier)
        trans.append(ftrans)
    return np.concatenate(orbit), np.concatenate(trans)


# -- subgroup descriptors -------------------------------------------------

class GroupDescriptor:
    """Base class: ``{ s(a)(I + pi m) : a in quotient, m on kernel_mask }``."""

    tag: str = "?"

    def __init__(self, ctx: GroupContext):
        self.ctx = ctx

    # subclasses provide these three
    @property
    def kernel_mask(self) -> np.ndarray:
        raise NotImplementedError

    def quotient_elements(self) -> np.ndarray:
        raise NotImplementedError

    def contains(self, X) -> np.ndarray:
        raise NotImplementedError

    def quotient_generators(self) -> np.ndarray:
        return subgroup_generators(self.quotient_elements(), self.ctx.p)

    def quotient_order(self) -> int:
        return len(self.quotient_elements())

    @property
    def contains_kernel(self) -> bool:
        return bool(self.kernel_mask.all())

    def order(self) -> int:
        return self.quotient_order() * self.ctx.q ** int(self.kernel_mask.sum())

    def kernel_part(self) -> np.ndarray:
        """The elements of this group lying in K_1."""
        return self.ctx.kernel_element(_masked_matrices(self.kernel_mask, self.ctx.p))

    def batches(self, size: int = BATCH) -> Iterator[np.ndarray]:
        if self.order() > self.ctx.cap:
            raise CapExceeded(f"{self.tag}: order {self.order()} exceeds cap {self.ctx.cap}")
        lifts = self.ctx.lift(self.quotient_elements())
        free = np.argwhere(self.kernel_mask)
        p, n = self.ctx.p, self.ctx.n
        nk = p ** len(free)
        per = max(1, size // max(nk, 1))
        ms = None
        if nk <= size:
            ms = self.kernel_part()
        for start in range(0, len(lifts), per):
            block = lifts[start:start + per]
            if ms is not None:
                yield self.ctx.mul(block[:, None], ms[None]).reshape(-1, n, n)
            else:
                for a in block:
                    for k0 in range(0, nk, size):
                        codes = np.arange(k0, min(nk, k0 + size))
                        m = np.zeros((len(codes), n, n), dtype=np.int64)
                        digits = (codes[:, None] // p ** np.arange(len(free))) % p
                        m[:, free[:, 0], free[:, 1]] = digits
                        yield self.ctx.mul(a, self.ctx.kernel_element(m))

    def random(self, rng: np.random.Generator, count: int) -> np.ndarray:
        quot = self.quotient_elements()
        a = self.ctx.lift(quot[rng.integers(len(quot), size=count)])
        m = rng.integers(self.ctx.p, size=(count, self.ctx.n, self.ctx.n)) * self.kernel_mask
        return self.ctx.mul(a, self.ctx.kernel_element(m))

    def __repr__(self):
        return f"<{self.tag} in GL_{self.ctx.n}({self.ctx.ring})>"

    def __eq__(self, other):
        return isinstance(other, GroupDescriptor) and (self.ctx, self.tag) == (other.ctx, other.tag)

    def __hash__(self):
        return hash((self.ctx, self.tag))


def _masked_matrices(mask: np.ndarray, p: int) -> np.ndarray:
    free = np.argwhere(mask)
    codes = np.arange(p ** len(free))
    m = np.zeros((len(codes), *mask.shape), dtype=np.int64)
    if len(free):
        m[:, free[:, 0], free[:, 1]] = (codes[:, None] // p ** np.arange(len(free))) % p
    return m


class FullGroup(GroupDescriptor):
    tag = "G"

    @property
    def kernel_mask(self):
        return np.ones((self.ctx.n, self.ctx.n), dtype=bool)

    def quotient_order(self):
        return residue_gl_order(self.ctx.n, self.ctx.q)

    def quotient_elements(self):
        return residue_gl_elements(self.ctx.n, self.ctx.p, self.ctx.cap)

    def quotient_generators(self):
        return residue_gl_generators(self.ctx.n, self.ctx.p)

    def contains(self, X):
        return is_unit(self.ctx, X)


class CongruenceKernel(GroupDescriptor):
    """K_1 = ker(GL_n(o_2) -> GL_n(F_q))."""

    tag = "K1"

    @property
    def kernel_mask(self):
        return np.ones((self.ctx.n, self.ctx.n), dtype=bool)

    def quotient_elements(self):
        return np.eye(self.ctx.n, dtype=np.int64)[None]

    def quotient_generators(self):
        return np.zeros((0, self.ctx.n, self.ctx.n), dtype=np.int64)

    def contains(self, X):
        return np.all(self.ctx.reduce(X) == self.ctx.identity, axis=(-1, -2))


class Parabolic(GroupDescriptor):
    """P(i,j): block upper-triangular with diagonal blocks of sizes i, j."""

    def __init__(self, ctx, i: int, j: int):
        super().__init__(ctx)
        if i + j != ctx.n or min(i, j) < 1:
            raise ValueError(f"need i + j = {ctx.n}")
        self.i, self.j = i, j
        self.tag = f"P({i},{j})"

    @property
    def kernel_mask(self):
        mask = np.ones((self.ctx.n, self.ctx.n), dtype=bool)
        mask[self.i:, :self.i] = False
        return mask

    def quotient_order(self):
        q = self.ctx.q
        return residue_gl_order(self.i, q) * residue_gl_order(self.j, q) * q ** (self.i * self.j)

    def quotient_elements(self):
        i, j, p, n = self.i, self.j, self.ctx.p, self.ctx.n
        A = residue_gl_elements(i, p, self.ctx.cap)
        D = residue_gl_elements(j, p, self.ctx.cap)
        Bs = _masked_matrices(np.ones((i, j), dtype=bool), p)
        out = np.zeros((len(A), len(D), len(Bs), n, n), dtype=np.int64)
        out[..., :i, :i] = A[:, None, None]
        out[..., i:, i:] = D[None, :, None]
        out[..., :i, i:] = Bs[None, None]
        return out.reshape(-1, n, n)

    def quotient_generators(self):
        i, j, p, n = self.i, self.j, self.ctx.p, self.ctx.n
        gens = []
        for g in residue_gl_generators(i, p) if i > 1 else _scalar_gens(p):
            m = np.eye(n, dtype=np.int64)
            m[:i, :i] = g
            gens.append(m)
        for g in residue_gl_generators(j, p) if j > 1 else _scalar_gens(p):
            m = np.eye(n, dtype=np.int64)
            m[i:, i:] = g
            gens.append(m)
        for a in range(i):
            for b in range(i, n):
                m = np.eye(n, dtype=np.int64)
                m[a, b] = 1
                gens.append(m)
        return np.array(gens)

    def contains(self, X):
        X = np.asarray(X)
        return is_unit(self.ctx, X) & np.all(X[..., self.i:, :self.i] == 0, axis=(-1, -2))


def _scalar_gens(p: int) -> np.ndarray:
    if p == 2:
        return np.zeros((0, 1, 1), dtype=np.int64)
    return residue_gl_generators(1, p)


class BlockUnipotent(GroupDescriptor):
    """U(i,j) = { I + M : M supported on the top-right i x j block }."""

    def __init__(self, ctx, i: int, j: int):
        super().__init__(ctx)
        if i + j != ctx.n or min(i, j) < 1:
            raise ValueError(f"need i + j = {ctx.n}")
        self.i, self.j = i, j
        self.tag = f"U({i},{j})"

    @property
    def kernel_mask(self):
        mask = np.zeros((self.ctx.n, self.ctx.n), dtype=bool)
        mask[:self.i, self.i:] = True
        return mask

    def quotient_order(self):
        return self.ctx.q ** (self.i * self.j)

    def quotient_elements(self):
        m = _masked_matrices(self.kernel_mask, self.ctx.p)
        return (m + np.eye(self.ctx.n, dtype=np.int64)) % self.ctx.p

    def quotient_generators(self):
        gens = []
        for a in range(self.i):
            for b in range(self.i, self.ctx.n):
                m = np.eye(self.ctx.n, dtype=np.int64)
                m[a, b] = 1
                gens.append(m)
        return np.array(gens)

    def contains(self, X):
        X = np.asarray(X)
        ident = self.ctx.identity
        outside = ~self.kernel_mask
        return np.all(np.where(outside, X == ident, True), axis=(-1, -2))


class InfinitesimalRadical(GroupDescriptor):
    """UInf(j) = { I + pi c : c supported on columns 1..j } (partition (2^j, 1^(n-j)))."""

    def __init__(self, ctx, j: int):
        super().__init__(ctx)
        if not 1 <= j < ctx.n:
            raise ValueError(f"need 1 <= j < {ctx.n}")
        self.j = j
        self.tag = f"UInf({j})"

    @property
    def partition(self) -> tuple[int, ...]:
        return (2,) * self.j + (1,) * (self.ctx.n - self.j)

    @property
    def kernel_mask(self):
        mask = np.zeros((self.ctx.n, self.ctx.n), dtype=bool)
        mask[:, :self.j] = True
        return mask

    def quotient_elements(self):
        return np.eye(self.ctx.n, dtype=np.int64)[None]

    def quotient_generators(self):
        return np.zeros((0, self.ctx.n, self.ctx.n), dtype=np.int64)

    def contains(self, X):
        X = np.asarray(X)
        ident = self.ctx.identity
        in_k1 = np.all(self.ctx.reduce(X) == ident, axis=(-1, -2))
        rest = np.all(X[..., :, self.j:] == ident[:, self.j:], axis=(-1, -2))
        return in_k1 & rest


class StabilizerPreimage(GroupDescriptor):
    """The full preimage in G of the centralizer of ``beta`` in GL_n(F_q).

    This is the stabilizer G(psi_beta) of the character psi_beta of K_1.
    """

    def __init__(self, ctx, beta):
        super().__init__(ctx)
        self.beta = np.asarray(beta, dtype=np.int64) % ctx.p
        self.beta.setflags(write=False)
        key = int(encode(self.beta, ctx.p))
        self.tag = f"Stab({key})"

    @property
    def kernel_mask(self):
        return np.ones((self.ctx.n, self.ctx.n), dtype=bool)

    @cached_property
    def centralizer(self) -> np.ndarray:
        c = residue_centralizer(self.beta, self.ctx.p, self.ctx.cap)
        c.setflags(write=False)
        return c

    @cached_property
    def centralizer_keys(self) -> np.ndarray:
        return encode(self.centralizer, self.ctx.p)

    @cached_property
    def section_inverses(self) -> np.ndarray:
        """s(c)^-1 over o_2 for each centralizer element c."""
        return self.ctx.inv(self.ctx.lift(self.centralizer))

    def quotient_elements(self):
        return self.centralizer

    @cached_property
    def _generators(self) -> np.ndarray:
        return subgroup_generators(self.centralizer, self.ctx.p)

    def quotient_generators(self):
        return self._generators

    def index_of(self, Xbar) -> np.ndarray:
        """Position of residue matrices in :attr:`centralizer` (-1 if absent)."""
        keys = encode(Xbar, self.ctx.p)
        pos = np.searchsorted(self.centralizer_keys, keys)
        pos = np.clip(pos, 0, len(self.centralizer_keys) - 1)
        return np.where(self.centralizer_keys[pos] == keys, pos, -1)

    def contains(self, X):
        xb = self.ctx.reduce(X)
        unit = is_unit(self.ctx, X)
        comm = np.all(matmul_mod(xb, self.beta, self.ctx.p) == matmul_mod(self.beta, xb, self.ctx.p),
                      axis=(-1, -2))
        return unit & comm

    def decompose(self, X) -> tuple[np.ndarray, np.ndarray]:
        """Write h = s(c) k; return (index of c, k in K_1)."""
        idx = self.index_of(self.ctx.reduce(X))
        if np.any(idx < 0):
            raise ValueError("element not in the stabilizer")
        return idx, self.ctx.mul(self.section_inverses[idx], X)


class ExplicitGroup(GroupDescriptor):
    """A subgroup given by its element list (over o_2)."""

    def __init__(self, ctx, elements, tag: str | None = None):
        super().__init__(ctx)
        els = np.asarray(elements, dtype=np.int64).reshape(-1, ctx.n, ctx.n)
        keys, first = np.unique(ctx.key(els), return_index=True)
        self.elements = els[first]
        self.keys = keys
        digest = hashlib.sha1(keys.tobytes()).hexdigest()[:12]
        self.tag = tag or f"Explicit({len(keys)}:{digest})"

    @property
    def kernel_mask(self):
        return np.zeros((self.ctx.n, self.ctx.n), dtype=bool)

    def order(self):
        return len(self.elements)

    def quotient_elements(self):
        red = self.ctx.reduce(self.elements)
        keys, first = np.unique(encode(red, self.ctx.p), return_index=True)
        return red[first]

    def quotient_generators(self):
        q = self.quotient_elements()
        return q[~np.all(q == self.ctx.identity, axis=(-1, -2))]

    @property
    def contains_kernel(self):
        return self.order() == len(self.quotient_elements()) * self.ctx.kernel_order

    def batches(self, size: int = BATCH):
        for start in range(0, len(self.elements), size):
            yield self.elements[start:start + size]

    def random(self, rng, count):
        return self.elements[rng.integers(len(self.elements), size=count)]

    def contains(self, X):
        keys = self.ctx.key(X)
        pos = np.clip(np.searchsorted(self.keys, keys), 0, len(self.keys) - 1)
        return self.keys[pos] == keys


class Intersection(GroupDescriptor):
    def __init__(self, a: GroupDescriptor, b: GroupDescriptor):
        super().__init__(a.ctx)
        self.a, self.b = a, b
        self.tag = f"({a.tag}&{b.tag})"

    @cached_property
    def elements(self) -> np.ndarray:
        small, other = (self.a, self.b) if self.a.order() <= self.b.order() else (self.b, self.a)
        parts = [X[other.contains(X)] for X in small.batches()]
        return np.concatenate(parts) if parts else np.zeros((0, self.ctx.n, self.ctx.n), np.int64)

    @property
    def kernel_mask(self):
        return self.a.kernel_mask & self.b.kernel_mask

    def order(self):
        return len(self.elements)

    def quotient_elements(self):
        return ExplicitGroup(self.ctx, self.elements).quotient_elements()

    def batches(self, size: int = BATCH):
        for start in range(0, len(self.elements), size):
            yield self.elements[start:start + size]

    def random(self, rng, count):
        return self.elements[rng.integers(len(self.elements), size=count)]

    def contains(self, X):
        return self.a.contains(X) & self.b.contains(X)


def order_of(D: GroupDescriptor) -> int:
    return D.order()


def members(D: GroupDescriptor) -> np.ndarray:
    """All elements of D as one array (each exactly once)."""
    parts = list(D.batches())
    if not parts:
        return np.zeros((0, D.ctx.n, D.ctx.n), dtype=np.int64)
    return np.concatenate(parts)


# -- double cosets ---------------------------------------------------------

@dataclass
class DoubleCosetDecomp:
    """Representatives (lifted from GL_n(F_q)) and sizes of A\\G/B."""

    reps: np.ndarray
    sizes: list[int]
    # B-orbit size of each coset inside A\G, i.e. |A x B| / |A|
    orbit_sizes: list[int] = field(default_factory=list)
    # x^-1 beta x for each representative, when A is a stabilizer preimage
    transported: np.ndarray | None = None

    def __len__(self):
        return len(self.sizes)

    def __iter__(self):
        return iter(zip(self.reps, self.sizes))

    def to_json(self) -> dict:
        out = {"reps": self.reps.tolist(), "sizes": [str(s) for s in self.sizes],
               "orbit_sizes": list(self.orbit_sizes)}
        if self.transported is not None:
            out["transported"] = self.transported.tolist()
        return out

    @classmethod
    def from_json(cls, data: dict) -> DoubleCosetDecomp:
        tr = data.get("transported")
        return cls(np.array(data["reps"], dtype=np.int64), [int(s) for s in data["sizes"]],
                   list(data["orbit_sizes"]), None if tr is None else np.array(tr, dtype=np.int64))


def _components(num: int, edges_src: list[np.ndarray], edges_dst: list[np.ndarray]) -> np.ndarray:
    if not edges_src:
        return np.arange(num)
    src = np.concatenate(edges_src)
    dst = np.concatenate(edges_dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(num, num))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def _stabilizer_view(A: GroupDescriptor) -> np.ndarray | None:
    """beta with A = preimage of C(beta), when A is known to be of that form."""
    if isinstance(A, StabilizerPreimage):
        return A.beta
    if isinstance(A, FullGroup):
        return np.zeros((A.ctx.n, A.ctx.n), dtype=np.int64)
    return None


def double_cosets(A: GroupDescriptor, B: GroupDescriptor, cache=None) -> DoubleCosetDecomp:
    """A\\G/B for K_1 <= A, computed in GL_n(F_q).

    ``cache`` is any object with ``fetch(key)`` / ``store(key, payload)``.
    """
    ctx = A.ctx
    if not A.contains_kernel:
        raise ValueError(f"double_cosets requires K1 <= A; got {A.tag}")
    key = ("double_cosets", ctx.q, ctx.ring.variant, ctx.n, A.tag, B.tag)
    if cache is not None:
        hit = cache.fetch(key)
        if hit is not None:
            return DoubleCosetDecomp.from_json(hit)
    beta = _stabilizer_view(A)
    if beta is not None:
        out = _double_cosets_by_orbit(A, B, beta)
    else:
        out = _double_cosets_by_enumeration(A, B)
    if cache is not None:
        cache.store(key, out.to_json())
    return out


def _double_cosets_by_orbit(A, B, beta) -> DoubleCosetDecomp:
    ctx = A.ctx
    p = ctx.p
    orbit, trans = conjugacy_orbit(beta, p)
    keys = encode(orbit, p)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    src, dst = [], []
    idx = np.arange(len(orbit))
    for b in B.quotient_generators():
        img = matmul_mod(matmul_mod(inv_mod(b, p), orbit, p), b, p)
        pos = order[np.searchsorted(sorted_keys, encode(img, p))]
        src.append(idx)
        dst.append(pos)
    labels = _components(len(orbit), src, dst)
    _, first, counts = np.unique(labels, return_index=True, return_counts=True)
    order_first = np.argsort(first)
    first, counts = first[order_first], counts[order_first]
    a_order = A.order()
    reps = ctx.lift(trans[first])
    sizes = [a_order * int(c) for c in counts]
    return DoubleCosetDecomp(reps, sizes, [int(c) for c in counts], orbit[first])


def _double_cosets_by_enumeration(A, B) -> DoubleCosetDecomp:
    """Orbit refinement on an explicit list of GL_n(F_q)."""
    ctx = A.ctx
    p = ctx.p
    G = residue_gl_elements(ctx.n, p, ctx.cap)
    keys = encode(G, p)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    idx = np.arange(len(G))
    src, dst = [], []
    for a in A.quotient_generators():
        src.append(idx)
        dst.append(order[np.searchsorted(sorted_keys, encode(matmul_mod(a, G, p), p))])
    for b in B.quotient_generators():
        src.append(idx)
        dst.append(order[np.searchsorted(sorted_keys, encode(matmul_mod(G, b, p), p))])
    labels = _components(len(G), src, dst)
    _, first, counts = np.unique(labels, return_index=True, return_counts=True)
    order_first = np.argsort(first)
    first, counts = first[order_first], counts[order_first]
    a_quot = A.quotient_order()
    sizes = [int(c) * ctx.kernel_order for c in counts]
    return DoubleCosetDecomp(ctx.lift(G[first]), sizes, [int(c) // a_quot for c in counts])


def conj_intersection(A: GroupDescriptor, x, B: GroupDescriptor) -> np.ndarray:
    """A intersected with x B x^-1, by scanning B."""
    return conj_intersections(A, np.asarray(x)[None], B)[0]


def conj_intersections(A: GroupDescriptor, X: np.ndarray, B: GroupDescriptor,
                       chunk: int = 1 << 20) -> list[np.ndarray]:
    """``conj_intersection`` for many conjugators at once."""
    ctx = A.ctx
    Bm = members(B)
    Xinv = ctx.inv(X)
    per = max(1, chunk // max(len(Bm), 1))
    out = []
    for s in range(0, len(X), per):
        C = ctx.mul(ctx.mul(X[s:s + per, None], Bm[None]), Xinv[s:s + per, None])
        keep = A.contains(C)
        out.extend(C[k][keep[k]] for k in range(len(C)))
    return out
