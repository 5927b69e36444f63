"""psi_beta, the coadjoint action, stabilizers, linear extensions, multiplicities."""

from fractions import Fraction

import numpy as np
import pytest

from cusplab.characters import (
    NotASubgroup,
    PsiBeta,
    coadjoint_transport,
    extend_linear,
    fixes_psi_beta,
    psi_beta_eval,
    stabilizer,
    trivial_multiplicity,
)
from cusplab.characters.extensions import transversal
from cusplab.matgroup import (
    BlockUnipotent,
    CongruenceKernel,
    FullGroup,
    Intersection,
    StabilizerPreimage,
    members,
    residue_centralizer,
    residue_gl_elements,
)
from cusplab.orbits import quartic_orbit_reps
from cusplab.ring_core.cyclotomic import Cyclotomic
from cusplab.ring_core.linalg import encode
from cusplab.ring_core.local_ring import AdditiveCharacter


def _psi(ctx):
    return AdditiveCharacter(ctx.ring)


def test_psi_beta_examples(ctx, betas):
    psi = _psi(ctx)
    one = Cyclotomic.rational(1)
    assert psi_beta_eval(ctx, psi, betas[0], ctx.identity) == one
    zero = np.zeros((4, 4), dtype=np.int64)
    K = members(CongruenceKernel(ctx))
    assert not np.any(PsiBeta(ctx, zero).exponents(K))
    with pytest.raises(ValueError):
        psi_beta_eval(ctx, psi, betas[0], betas[0])


def test_psi_beta_matrix_unit_zp2():
    from cusplab.matgroup import GroupContext
    from cusplab.ring_core.local_ring import LocalRing
    ctx = GroupContext(LocalRing(2, "zp2"))
    E11 = np.zeros((4, 4), dtype=np.int64)
    E11[0, 0] = 1
    x = ctx.identity + 2 * E11
    assert psi_beta_eval(ctx, _psi(ctx), E11, x) == Cyclotomic.rational(-1)


def test_psi_beta_exhaustive_formula(ctx, betas):
    """Against an independent trace formula on all 65536 elements of K_1."""
    K = members(CongruenceKernel(ctx))
    m = ctx.kernel_log(K)
    for beta in (*betas, quartic_orbit_reps(2)[1]):
        tr = np.einsum("ij,kji->k", beta, m) % 2
        expected = 2 * tr if ctx.ring.variant == "zp2" else tr
        got = PsiBeta(ctx, beta).exponents(K)
        assert np.array_equal(got, expected)


def test_psi_beta_additive_in_beta(ctx, betas, rng):
    K = members(CongruenceKernel(ctx))[rng.integers(65536, size=4000)]
    a, b = betas
    pa, pb, pab = (PsiBeta(ctx, x) for x in (a, b, (a + b) % 2))
    order = pa.order
    assert np.array_equal((pa.exponents(K) + pb.exponents(K)) % order, pab.exponents(K))
    # homomorphism on K_1
    i, j = rng.integers(len(K), size=(2, 4000))
    lhs = pa.exponents(ctx.mul(K[i], K[j]))
    assert np.array_equal(lhs, (pa.exponents(K[i]) + pa.exponents(K[j])) % order)


def test_psi_beta_trivial_on_k1_cap_u22(ctx, betas):
    S = members(Intersection(CongruenceKernel(ctx), BlockUnipotent(ctx, 2, 2)))
    assert len(S) == 16
    for beta in betas:
        assert not np.any(PsiBeta(ctx, beta).exponents(S))


def test_coadjoint_transport_examples(ctx, betas, rng):
    beta1, beta2 = betas
    assert np.array_equal(coadjoint_transport(ctx, ctx.identity, beta1), beta1)
    k = ctx.kernel_element(rng.integers(2, size=(4, 4)))
    assert np.array_equal(coadjoint_transport(ctx, k, beta1), beta1)
    swap = np.zeros((4, 4), dtype=np.int64)
    swap[:2, 2:] = swap[2:, :2] = np.eye(2, dtype=np.int64)
    assert np.array_equal(coadjoint_transport(ctx, swap, beta2), beta2)


def test_coadjoint_identity_exhaustive(ctx, betas, rng):
    """psi_beta(x k x^-1) = psi_{xbar^-1 beta xbar}(k) for every k in K_1."""
    K = members(CongruenceKernel(ctx))
    G = residue_gl_elements(4, 2)
    for x in G[rng.integers(len(G), size=3)]:
        x = ctx.lift(x)
        moved = ctx.conj(x, K)
        for beta in betas:
            lhs = PsiBeta(ctx, beta).exponents(moved)
            rhs = PsiBeta(ctx, coadjoint_transport(ctx, x, beta)).exponents(K)
            assert np.array_equal(lhs, rhs)


def test_stabilizer_is_centralizer_exhaustive(ctx, betas):
    """g fixes psi_beta iff gbar centralizes beta, over all of GL_4(F_2)."""
    G = residue_gl_elements(4, 2)
    assert len(G) == 20160
    for beta in betas:
        fixed = fixes_psi_beta(ctx, ctx.lift(G), beta)
        cent = set(encode(residue_centralizer(beta, 2), 2).tolist())
        assert set(encode(G[fixed], 2).tolist()) == cent


def test_stabilizer_orders(ctx, betas):
    assert stabilizer(ctx, betas[0]).order() == 12 * 65536
    assert stabilizer(ctx, betas[1]).order() == 180 * 65536
    zero = stabilizer(ctx, np.zeros((4, 4), dtype=np.int64))
    assert zero.order() == FullGroup(ctx).order()


# -- linear extensions -------------------------------------------------------------

@pytest.mark.parametrize("which,count", [(0, 12), (1, 3)])
def test_extension_counts(ctx, betas, which, count):
    beta = betas[which]
    fam = extend_linear(PsiBeta(ctx, beta), StabilizerPreimage(ctx, beta))
    assert fam.exists and len(fam) == count
    assert len({tuple(r.generator_exponents) for r in fam}) == count


def test_extension_count_quartic(ctx):
    for beta in quartic_orbit_reps(2):
        assert len(extend_linear(PsiBeta(ctx, beta), StabilizerPreimage(ctx, beta))) == 15


def test_extension_trivial_base(ctx):
    zero = np.zeros((4, 4), dtype=np.int64)
    fam = extend_linear(PsiBeta(ctx, zero), CongruenceKernel(ctx))
    assert len(fam) == 1
    assert fam[0].is_trivial_on(members(CongruenceKernel(ctx)))


def test_extension_errors(ctx, betas):
    with pytest.raises(ValueError):
        extend_linear(PsiBeta(ctx, betas[0]), BlockUnipotent(ctx, 2, 2))
    with pytest.raises(ValueError):
        extend_linear(PsiBeta(ctx, betas[0]), FullGroup(ctx))


@pytest.mark.parametrize("which", [0, 1])
def test_extensions_are_characters(ctx, betas, rng, which):
    beta = betas[which]
    H = StabilizerPreimage(ctx, beta)
    base = PsiBeta(ctx, beta)
    fam = extend_linear(base, H)
    K = members(CongruenceKernel(ctx))
    X, Y = H.random(rng, 10_000), H.random(rng, 10_000)
    seen = set()
    for rho in fam:
        N = rho.modulus
        # restriction to K_1 is psi_beta, exhaustively
        assert np.array_equal(rho.exponents(K), base.exponents(K) * (N // base.order) % N)
        assert rho(ctx.identity) == Cyclotomic.rational(1)
        lhs = rho.exponents(ctx.mul(X, Y))
        assert np.array_equal(lhs, (rho.exponents(X) + rho.exponents(Y)) % N)
        seen.add((N, tuple(rho.exponents(transversal(H).lifts))))
    assert len(seen) == len(fam)


def test_extension_family_is_torsor(ctx, betas):
    """Ratios of members are exactly the characters of H/K_1 (count = |H/K_1^ab|)."""
    beta = betas[0]
    H = StabilizerPreimage(ctx, beta)
    fam = extend_linear(PsiBeta(ctx, beta), H)
    lifts = transversal(H).lifts
    N = max(r.modulus for r in fam)
    base = fam[0].exponents(lifts, modulus=N)
    ratios = {tuple((r.exponents(lifts, modulus=N) - base) % N) for r in fam}
    assert len(ratios) == len(fam) == 12  # H/K_1 is abelian of order 12


# -- trivial multiplicities ----------------------------------------------------------

def test_trivial_multiplicity_examples(ctx, betas, rng):
    zero = np.zeros((4, 4), dtype=np.int64)
    K1 = CongruenceKernel(ctx)
    trivial = extend_linear(PsiBeta(ctx, zero), K1)[0]
    U = members(Intersection(K1, BlockUnipotent(ctx, 2, 2)))
    assert trivial_multiplicity(trivial, U) == 1
    # nontrivial linear character on its whole (finite, enumerable) domain
    beta = betas[0]
    H = StabilizerPreimage(ctx, beta)
    rho = extend_linear(PsiBeta(ctx, beta), H)[0]
    assert trivial_multiplicity(rho, members(K1)) == 0
    with pytest.raises(NotASubgroup):
        trivial_multiplicity(rho, members(K1)[:100])


def test_trivial_multiplicity_values_are_0_or_1(ctx, betas):
    beta = betas[0]
    H = StabilizerPreimage(ctx, beta)
    from cusplab.matgroup import conj_intersection
    S = conj_intersection(H, ctx.identity, BlockUnipotent(ctx, 2, 2))
    vals = [trivial_multiplicity(r, S) for r in extend_linear(PsiBeta(ctx, beta), H)]
    assert set(vals) <= {Fraction(0), Fraction(1)}
    assert vals.count(1) == 3
