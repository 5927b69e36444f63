from collections import Counter
from itertools import product

import numpy as np
import pytest

from cusplab.matgroup import (
    BlockUnipotent,
    CapExceeded,
    CongruenceKernel,
    DoubleCosetDecomp,
    ExplicitGroup,
    FullGroup,
    GroupContext,
    InfinitesimalRadical,
    Intersection,
    Parabolic,
    StabilizerPreimage,
    conj_intersection,
    double_cosets,
    is_unit,
    members,
    order_of,
)
from cusplab.ring_core.local_ring import LocalRing

GL4F2 = 20160


def test_is_unit_examples(ctx):
    assert is_unit(ctx, ctx.identity)
    d = ctx.identity.copy()
    d[0, 0] = ctx.ring.uniformizer
    assert not is_unit(ctx, d)
    N = np.arange(16).reshape(4, 4) % 2
    assert is_unit(ctx, ctx.kernel_element(N))


def test_orders(ctx):
    assert order_of(FullGroup(ctx)) == GL4F2 * 2 ** 16
    assert order_of(CongruenceKernel(ctx)) == 65536
    assert order_of(BlockUnipotent(ctx, 2, 2)) == 256
    for i in (1, 2, 3):
        assert order_of(BlockUnipotent(ctx, i, 4 - i)) == 4 ** (i * (4 - i))
        assert order_of(InfinitesimalRadical(ctx, i)) == 2 ** (4 * i)


def test_members_examples(ctx):
    U1 = members(InfinitesimalRadical(ctx, 1))
    assert len(U1) == 16
    assert np.all(ctx.reduce(U1) == ctx.identity)
    assert np.all(U1[:, :, 1:] == ctx.identity[:, 1:])
    both = Intersection(CongruenceKernel(ctx), BlockUnipotent(ctx, 2, 2))
    assert order_of(both) == 16
    one = ExplicitGroup(ctx, ctx.identity[None])
    assert members(one).tolist() == [ctx.identity.tolist()]


def test_members_cap():
    small = GroupContext(LocalRing(2), cap=1000)
    with pytest.raises(CapExceeded):
        members(CongruenceKernel(small))


def test_uinf_chain(ctx):
    els = [members(InfinitesimalRadical(ctx, j)) for j in (1, 2, 3)]
    assert np.all(InfinitesimalRadical(ctx, 2).contains(els[0]))
    assert np.all(InfinitesimalRadical(ctx, 3).contains(els[1]))
    assert np.all(CongruenceKernel(ctx).contains(els[2]))


def test_kernel_is_additive(ctx, rng):
    """(I + pi a)(I + pi b) = I + pi(a + b): all a against the 16 basis directions."""
    a = members(CongruenceKernel(ctx))
    la = ctx.kernel_log(a)
    for i, j in product(range(4), repeat=2):
        e = np.zeros((4, 4), dtype=np.int64)
        e[i, j] = 1
        prod_ = ctx.mul(a, ctx.kernel_element(e))
        assert np.array_equal(ctx.kernel_log(prod_), (la + e) % 2)
    b = la[rng.integers(len(la), size=len(la))]
    assert np.array_equal(ctx.kernel_log(ctx.mul(a, ctx.kernel_element(b))), (la + b) % 2)


def _closed(D, ctx, rng, pairs=10_000):
    X = members(D) if D.order() <= 100_000 else D.random(rng, pairs)
    i, j = rng.integers(len(X), size=(2, pairs))
    return bool(np.all(D.contains(ctx.mul(X[i], X[j]))) and np.all(D.contains(ctx.inv(X))))


@pytest.mark.parametrize("make", [
    lambda c: CongruenceKernel(c),
    lambda c: BlockUnipotent(c, 1, 3),
    lambda c: BlockUnipotent(c, 2, 2),
    lambda c: BlockUnipotent(c, 3, 1),
    lambda c: InfinitesimalRadical(c, 2),
    lambda c: Parabolic(c, 2, 2),
    lambda c: FullGroup(c),
])
def test_descriptor_closure(ctx, rng, make):
    assert _closed(make(ctx), ctx, rng)


def test_stabilizer_closure(ctx, rng, betas):
    for beta in betas:
        assert _closed(StabilizerPreimage(ctx, beta), ctx, rng)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_parabolic_normalizes_radical(ctx, rng, i):
    P, U = Parabolic(ctx, i, 4 - i), BlockUnipotent(ctx, i, 4 - i)
    p, u = P.random(rng, 2000), U.random(rng, 2000)
    assert np.all(U.contains(ctx.conj(p, u)))


def test_double_cosets_trivial_cases(ctx, betas):
    G = FullGroup(ctx)
    dc = double_cosets(G, G)
    assert len(dc) == 1 and dc.sizes == [G.order()]
    assert len(double_cosets(G, CongruenceKernel(ctx))) == 1
    for beta in betas:
        A = StabilizerPreimage(ctx, beta)
        for B in (BlockUnipotent(ctx, 2, 2), BlockUnipotent(ctx, 1, 3), InfinitesimalRadical(ctx, 1)):
            dc = double_cosets(A, B)
            assert sum(dc.sizes) == G.order()
            # transported betas are pairwise non-conjugate under B-bar
            assert len({x.tobytes() for x in dc.transported}) == len(dc)


def test_double_coset_json_roundtrip(ctx, betas):
    dc = double_cosets(StabilizerPreimage(ctx, betas[0]), BlockUnipotent(ctx, 2, 2))
    back = DoubleCosetDecomp.from_json(dc.to_json())
    assert np.array_equal(back.reps, dc.reps) and back.sizes == dc.sizes
    assert np.array_equal(back.transported, dc.transported)


def test_conj_intersection_examples(ctx, betas):
    beta1 = betas[0]
    U22 = BlockUnipotent(ctx, 2, 2)
    S = conj_intersection(StabilizerPreimage(ctx, beta1), ctx.identity, U22)
    assert len(S) == 64
    assert len(conj_intersection(FullGroup(ctx), ctx.identity, U22)) == 256
    U1 = InfinitesimalRadical(ctx, 1)
    assert len(conj_intersection(CongruenceKernel(ctx), ctx.identity, U1)) == 16


# -- quotient reduction against brute force on GL_2(o_2) ----------------------------

def _brute_double_cosets(A, B, G):
    ctx = A.ctx
    els = members(G)
    keys = ctx.key(els)
    index = {int(k): i for i, k in enumerate(keys)}
    a, b = members(A), members(B)
    seen = np.full(len(els), -1)
    sizes = []
    for i in range(len(els)):
        if seen[i] >= 0:
            continue
        orbit = ctx.key(ctx.mul(ctx.mul(a[:, None], els[i]), b[None])).ravel()
        idx = [index[int(k)] for k in np.unique(orbit)]
        seen[idx] = len(sizes)
        sizes.append(len(idx))
    return sizes


@pytest.mark.parametrize("variant", ["zp2", "dual"])
def test_quotient_reduction_gl2(variant):
    ctx = GroupContext(LocalRing(2, variant), n=2)
    G = FullGroup(ctx)
    assert G.order() == 96
    Bs = [BlockUnipotent(ctx, 1, 1), InfinitesimalRadical(ctx, 1), CongruenceKernel(ctx),
          ExplicitGroup(ctx, ctx.identity[None], tag="{I}")]
    for code in range(16):
        beta = np.array([(code >> k) & 1 for k in range(4)]).reshape(2, 2)
        A = StabilizerPreimage(ctx, beta)
        for B in Bs:
            dc = double_cosets(A, B)
            assert Counter(dc.sizes) == Counter(_brute_double_cosets(A, B, G)), (code, B.tag)
