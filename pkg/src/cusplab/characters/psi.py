"""The characters psi_beta of K_1 and the coadjoint action on them."""

from __future__ import annotations

import numpy as np

from cusplab.matgroup import CongruenceKernel, GroupContext, StabilizerPreimage
from cusplab.ring_core.cyclotomic import Cyclotomic
from cusplab.ring_core.linalg import inv_mod, matmul_mod
from cusplab.ring_core.local_ring import AdditiveCharacter


def psi_beta_exponents(ctx: GroupContext, psi: AdditiveCharacter, beta, K) -> np.ndarray:
    """psi(Tr(beta_hat (x - 1))) as exponents of zeta_{psi.order}, for x in K_1.

    No membership check; use :func:`psi_beta_eval` for checked scalar access.
    """
    K = np.asarray(K, dtype=np.int64)
    ring = ctx.ring
    D = ring.sub(K, np.broadcast_to(ctx.identity, K.shape))
    T = ring.trace(ring.matmul(ctx.lift(beta), D))
    return psi.exponent(T)


def psi_beta_eval(ctx: GroupContext, psi: AdditiveCharacter, beta, x) -> Cyclotomic:
    x = np.asarray(x, dtype=np.int64)
    if not CongruenceKernel(ctx).contains(x):
        raise ValueError("psi_beta is only defined on K_1")
    return Cyclotomic.root(psi.order, int(psi_beta_exponents(ctx, psi, beta, x)))


def coadjoint_transport(ctx: GroupContext, g, beta) -> np.ndarray:
    """gbar^-1 beta gbar, so that psi_beta(g k g^-1) = psi_{gbar^-1 beta gbar}(k)."""
    gb = ctx.reduce(g)
    return matmul_mod(matmul_mod(inv_mod(gb, ctx.p), np.asarray(beta) % ctx.p, ctx.p), gb, ctx.p)


def stabilizer(ctx: GroupContext, beta) -> StabilizerPreimage:
    """G(psi_beta), the preimage of the centralizer of beta."""
    return StabilizerPreimage(ctx, beta)


def fixes_psi_beta(ctx: GroupContext, g, beta) -> np.ndarray:
    """Whether conjugation by g (batched) fixes psi_beta; decided on K_1 generators.

    psi_beta(g k g^-1) = psi_beta(k) for the n^2 generators I + pi E_ij of K_1
    is equivalent to g fixing the character.
    """
    n, p = ctx.n, ctx.p
    g = np.asarray(g, dtype=np.int64)
    E = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    gens = ctx.kernel_element(E)
    base = psi_beta_exponents(ctx, AdditiveCharacter(ctx.ring), beta, gens)
    conj = ctx.mul(ctx.mul(g[..., None, :, :], gens), ctx.inv(g)[..., None, :, :])
    moved = psi_beta_exponents(ctx, AdditiveCharacter(ctx.ring), beta, conj)
    return np.all(moved == base, axis=-1)
