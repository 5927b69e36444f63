"""Linear characters of H (K_1 <= H) extending psi_beta.

H is presented through a right transversal ``s(c)`` of K_1 (the entrywise
lift of each c in Hbar = H/K_1) and lifted generators ``s(g)``.  BFS over the
Cayley graph of Hbar gives tree words T(c) = s(c) k_c, and every edge (c, g)
yields a Schreier relator r = T(c) s(g) T(cg)^-1 in K_1.  A linear extension
rho is fixed by x_g = rho(s(g)) in Q/Z, subject to

    (L_c + e_g - L_cg) . x  =  psi_beta(r)            (mod 1)

where L_c counts generator letters in T(c).  Integer row reduction of the
relation matrix separates the solvable part (a full-rank square block,
diagonalised by Smith decomposition) from relator combinations whose
letter count cancels; those lie in [H, H] and, with the K_1-commutators
g m g^-1 - m, span the derived kernel [H, H] cap K_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import lcm

import numpy as np

from cusplab.characters.lattice import RowEchelon, smith
from cusplab.characters.psi import fixes_psi_beta, psi_beta_exponents
from cusplab.matgroup import CongruenceKernel, GroupContext, GroupDescriptor
from cusplab.ring_core.cyclotomic import Cyclotomic
from cusplab.ring_core.linalg import encode, inv_mod, matmul_mod, span_mod
from cusplab.ring_core.local_ring import AdditiveCharacter


class PsiBeta:
    """psi_beta on K_1 for a residue matrix beta and additive character psi."""

    def __init__(self, ctx: GroupContext, beta, psi: AdditiveCharacter | None = None):
        self.ctx = ctx
        self.beta = np.asarray(beta, dtype=np.int64) % ctx.p
        self.beta.setflags(write=False)
        self.psi = psi or AdditiveCharacter(ctx.ring)

    @property
    def order(self) -> int:
        """Exponents are taken modulo this (values are order-th roots of unity)."""
        return self.psi.order

    def exponents(self, K) -> np.ndarray:
        return psi_beta_exponents(self.ctx, self.psi, self.beta, K)

    def __call__(self, x) -> Cyclotomic:
        if not CongruenceKernel(self.ctx).contains(np.asarray(x)):
            raise ValueError("psi_beta is only defined on K_1")
        return Cyclotomic.root(self.order, int(self.exponents(x)))

    def __repr__(self):
        return f"PsiBeta({encode(self.beta, self.ctx.p)}, scale={self.psi.scale})"


class Transversal:
    """Residue elements of H (sorted by key) with their lifts and inverses."""

    def __init__(self, H: GroupDescriptor):
        ctx = H.ctx
        els = np.asarray(H.quotient_elements(), dtype=np.int64)
        keys = encode(els, ctx.p)
        order = np.argsort(keys)
        self.ctx = ctx
        self.elements = els[order]
        self.keys = keys[order]
        self.lifts = ctx.lift(self.elements)
        self.inverses = ctx.inv(self.lifts)

    def __len__(self):
        return len(self.keys)

    def index_of(self, Xbar) -> np.ndarray:
        keys = encode(Xbar, self.ctx.p)
        pos = np.clip(np.searchsorted(self.keys, keys), 0, len(self.keys) - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    def decompose(self, X) -> tuple[np.ndarray, np.ndarray]:
        """h = s(c) k with k in K_1; returns (index of c, k)."""
        X = np.asarray(X, dtype=np.int64)
        idx = self.index_of(self.ctx.reduce(X))
        if np.any(idx < 0):
            raise ValueError("element outside the domain")
        return idx, self.ctx.mul(self.inverses[idx], X)


@lru_cache(maxsize=64)
def transversal(H: GroupDescriptor) -> Transversal:
    return Transversal(H)


class LinearChar:
    """A linear character of H, stored by its values on the transversal.

    rho(s(c) k) = zeta_N^(section[c]) * psi_beta(k).
    """

    def __init__(self, base: PsiBeta, H: GroupDescriptor, section: np.ndarray, modulus: int,
                 generators: np.ndarray, generator_exponents: np.ndarray, label: str = ""):
        self.base = base
        self.domain = H
        self.section = np.asarray(section, dtype=np.int64) % modulus
        self.modulus = modulus
        self.generators = generators
        self.generator_exponents = generator_exponents
        self.label = label

    @property
    def ctx(self) -> GroupContext:
        return self.base.ctx

    @property
    def dimension(self) -> int:
        return 1

    def exponents(self, X, modulus: int | None = None) -> np.ndarray:
        """rho(X) = zeta_modulus ** result; ``modulus`` must be a multiple of :attr:`modulus`."""
        M = modulus or self.modulus
        if M % self.modulus:
            raise ValueError(f"modulus {M} is not a multiple of {self.modulus}")
        idx, k = transversal(self.domain).decompose(X)
        e = self.section[idx] + self.base.exponents(k) * (self.modulus // self.base.order)
        return (e % self.modulus) * (M // self.modulus)

    def __call__(self, x) -> Cyclotomic:
        return Cyclotomic.root(self.modulus, int(self.exponents(np.asarray(x))))

    def character_sum(self, X) -> Cyclotomic:
        counts = np.bincount(self.exponents(X).ravel(), minlength=self.modulus)
        return Cyclotomic.from_counts(self.modulus, counts)

    def is_trivial_on(self, X) -> bool:
        return not np.any(self.exponents(X))

    def __repr__(self):
        return f"LinearChar({self.label or '?'} on {self.domain.tag})"


@dataclass
class ExtensionFamily:
    base: PsiBeta
    H: GroupDescriptor
    members: list[LinearChar]
    derived_kernel: np.ndarray  # F_p basis of logs of [H, H] cap K_1, as n*n rows
    elementary_divisors: list[int] = field(default_factory=list)
    generators: np.ndarray | None = None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i) -> LinearChar:
        return self.members[i]

    @property
    def exists(self) -> bool:
        return bool(self.members)

    @cached_property
    def abelianization_order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out


def _bfs(T: Transversal, gens: np.ndarray, mult: np.ndarray):
    """Tree words: letter counts L and the matrices T(c) over o_2."""
    ctx = T.ctx
    size, r = len(T), len(gens)
    n = ctx.n
    L = np.zeros((size, r), dtype=np.int64)
    words = np.zeros((size, n, n), dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    start = int(T.index_of(ctx.identity)[()])
    seen[start] = True
    words[start] = ctx.identity
    frontier = np.array([start])
    lifted = ctx.lift(gens)
    while len(frontier):
        nxt = []
        for gi in range(r):
            dst = mult[gi, frontier]
            fresh = ~seen[dst]
            dst_f, first = np.unique(dst[fresh], return_index=True)
            src = frontier[fresh][first]
            seen[dst_f] = True
            L[dst_f] = L[src]
            L[dst_f, gi] += 1
            words[dst_f] = ctx.mul(words[src], lifted[gi])
            nxt.append(dst_f)
        frontier = np.concatenate(nxt) if nxt else np.zeros(0, dtype=np.int64)
    if not seen.all():
        raise AssertionError("quotient generators do not generate H/K_1")
    return L, words


def extend_linear(base: PsiBeta, H: GroupDescriptor) -> ExtensionFamily:
    """All linear characters of H restricting to ``base`` on K_1."""
    ctx = base.ctx
    p, n = ctx.p, ctx.n
    if not H.contains_kernel:
        raise ValueError(f"extend_linear needs K_1 <= H; got {H.tag}")
    T = transversal(H)
    gens = np.asarray(H.quotient_generators(), dtype=np.int64).reshape(-1, n, n)
    r = len(gens)
    if r and not np.all(fixes_psi_beta(ctx, ctx.lift(gens), base.beta)):
        raise ValueError("base character is not H-stable")

    mult = np.stack([T.index_of(matmul_mod(T.elements, g, p)) for g in gens]) if r \
        else np.zeros((0, len(T)), dtype=np.int64)
    if np.any(mult < 0):
        raise AssertionError("transversal is not closed under the generators")
    L, words = _bfs(T, gens, mult)
    words_inv = ctx.inv(words)

    scale = base.order // p  # psi_beta takes p-th root values on K_1
    ech = RowEchelon(r, p)
    lifted = ctx.lift(gens)
    for gi in range(r):
        rel = ctx.mul(ctx.mul(words, lifted[gi]), words_inv[mult[gi]])
        if not np.all(ctx.reduce(rel) == ctx.identity):
            raise AssertionError("Schreier relator outside K_1")
        logs = ctx.kernel_log(rel).reshape(len(T), n * n)
        taus = base.exponents(rel) // scale
        E = L + np.eye(r, dtype=np.int64)[gi] - L[mult[gi]]
        live = np.any(E != 0, axis=1) | np.any(logs != 0, axis=1)
        for e, v, t in zip(E[live], logs[live], taus[live]):
            ech.add(e, [*v, t])

    # derived kernel: K_1-commutators plus cancelling relator combinations
    units = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    vecs = [((matmul_mod(matmul_mod(g, units, p), inv_mod(g, p), p) - units) % p).reshape(-1, n * n)
            for g in gens]
    vecs += [np.array([row[:n * n] for row in ech.zero_aux], dtype=np.int64).reshape(-1, n * n)]
    derived = span_mod(np.concatenate(vecs) if vecs else np.zeros((0, n * n), np.int64), p)
    on_derived = base.exponents(ctx.kernel_element(derived.reshape(-1, n, n)))
    exists = not np.any(on_derived)
    if exists != all(row[-1] == 0 for row in ech.zero_aux):
        raise AssertionError("derived-kernel test disagrees with relator consistency")
    if not exists:
        return ExtensionFamily(base, H, [], derived, [], gens)

    A, aux = ech.matrix()
    if ech.rank != r:
        raise AssertionError("relation lattice is not of full rank")
    d, P, Q = smith(A)
    tau = [Fraction(row[-1], p) for row in aux]
    ptau = [sum((P[i][j] * tau[j] for j in range(r)), Fraction(0)) for i in range(r)]
    N = lcm(base.order, p * lcm(*d)) if d else base.order

    # psi_beta(k_c) with s(c) k_c = T(c)
    k_exp = base.exponents(ctx.mul(T.inverses, words)) * (N // base.order)
    members = []
    for js in product(*(range(di) for di in d)):
        y = [(ptau[i] + js[i]) * N / d[i] for i in range(r)]
        assert all(v.denominator == 1 for v in y)
        y = [int(v) for v in y]
        x = np.array([sum(Q[a][b] * y[b] for b in range(r)) % N for a in range(r)], dtype=np.int64)
        section = (L @ x - k_exp) % N if r else (-k_exp) % N
        label = f"ext[{len(members)}]"
        members.append(LinearChar(base, H, section, N, lifted, x, label))
    return ExtensionFamily(base, H, members, derived, d, gens)
