from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cusplab.ring_core.cyclotomic import Cyclotomic, cyclotomic_polynomial, normal_forms, totient
from cusplab.ring_core.fields import FiniteField
from cusplab.ring_core.linalg import decode, det_mod, encode, inv_mod, matmul_mod, rank_mod
from cusplab.ring_core.local_ring import (
    AdditiveCharacter,
    LocalRing,
    embed_fq2,
    psi_eval,
    quadratic_extension,
    unembed_fq2,
    unit_characters,
)

PS = (2, 3)


# -- o_2 ------------------------------------------------------------------------

def test_reduce_examples():
    z4 = LocalRing(2, "zp2")
    d2 = LocalRing(2, "dual")
    assert z4.reduce(3) == 1
    assert z4.reduce(2) == 0
    assert d2.reduce(d2.element(1, 1)) == 1


@pytest.mark.parametrize("variant", ["zp2", "dual"])
@pytest.mark.parametrize("p", PS)
def test_ring_axioms_exhaustive(p, variant):
    R = LocalRing(p, variant)
    xs = np.arange(R.size)
    a, b = np.meshgrid(xs, xs, indexing="ij")
    assert R.size == p * p
    assert len(R.units) == p * (p - 1)
    # pi^2 = 0 and the residue map is a ring homomorphism with kernel pi*o_2
    assert R.mul(R.uniformizer, R.uniformizer) == 0
    assert np.array_equal(R.reduce(R.add(a, b)), (R.reduce(a) + R.reduce(b)) % p)
    assert np.array_equal(R.reduce(R.mul(a, b)), (R.reduce(a) * R.reduce(b)) % p)
    assert sorted(x for x in xs if R.reduce(x) == 0) == [R.pi_times(m) for m in range(p)]
    for x in range(p):
        assert R.reduce(R.lift(x)) == x
    assert R.lift(0) == 0 and R.lift(1) == 1


def test_variant_multiplication_rules():
    R = LocalRing(3, "dual")
    for a0, a1, b0, b1 in product(range(3), repeat=4):
        got = R.coords(R.mul(R.element(a0, a1), R.element(b0, b1)))
        assert got == ((a0 * b0) % 3, (a0 * b1 + a1 * b0) % 3)
    Z = LocalRing(3, "zp2")
    xs = np.arange(9)
    assert np.array_equal(Z.mul(xs[:, None], xs[None]), (xs[:, None] * xs[None]) % 9)


def test_variant_aliases():
    assert LocalRing(2, "integer-lift").variant == "zp2"
    assert LocalRing(2, "dual-numbers").variant == "dual"
    with pytest.raises(ValueError):
        LocalRing(2, "padic")
    with pytest.raises(ValueError):
        LocalRing(4)


@pytest.mark.parametrize("variant", ["zp2", "dual"])
def test_matrix_inverse(variant, rng):
    R = LocalRing(3, variant)
    A = rng.integers(9, size=(400, 3, 3))
    A = A[det_mod(A % 3, 3) != 0]
    inv = R.inv(A)
    assert np.all(R.matmul(A, inv) == np.eye(3, dtype=np.int64))


# -- characters of o_2 ------------------------------------------------------------

def test_psi_examples():
    z4 = AdditiveCharacter(LocalRing(2, "zp2"))
    assert psi_eval(z4, 1) == Cyclotomic.root(4, 1)  # i
    assert psi_eval(z4, 2) == Cyclotomic.rational(-1)
    d2 = AdditiveCharacter(LocalRing(2, "dual"))
    assert psi_eval(d2, d2.ring.element(0, 1)) == Cyclotomic.rational(-1)
    for psi in (z4, d2):
        assert psi_eval(psi, 0) == Cyclotomic.rational(1)


@pytest.mark.parametrize("variant", ["zp2", "dual"])
@pytest.mark.parametrize("p", PS)
@pytest.mark.parametrize("scale", [1, 2])
def test_psi_homomorphism_and_conductor(p, variant, scale):
    if scale % p == 0:
        pytest.skip("scale must be a unit")
    R = LocalRing(p, variant)
    psi = AdditiveCharacter(R, scale)
    xs = np.arange(R.size)
    e = psi.exponent(xs)
    for x in xs:
        assert np.array_equal(psi.exponent(R.add(x, xs)), (e[x] + e) % psi.order)
    total = sum((psi(int(x)) for x in xs), Cyclotomic.rational(0))
    assert total.is_zero()
    # nontrivial on pi*o_2
    assert any(psi(R.pi_times(m)) != Cyclotomic.rational(1) for m in range(p))


@pytest.mark.parametrize("variant,p,count", [("zp2", 2, 2), ("zp2", 3, 6), ("dual", 2, 2), ("dual", 3, 6)])
def test_unit_characters(variant, p, count):
    R = LocalRing(p, variant)
    chis = unit_characters(R)
    assert len(chis) == count
    assert any(c.is_trivial for c in chis)
    u = R.units
    table = []
    for c in chis:
        e = c.exponent(u)
        prods = R.mul(u[:, None], u[None])
        assert np.array_equal(c.exponent(prods), (e[:, None] + e[None]) % c.order)
        table.append(tuple(e))
    assert len(set(table)) == len(chis)
    with pytest.raises(ValueError):
        chis[0].exponent(R.pi_times(1))


# -- F_{q^2} and the embedding ----------------------------------------------------

def test_embed_examples():
    F4 = quadratic_extension(2)
    assert np.array_equal(embed_fq2(F4, 1), np.eye(2))
    assert np.array_equal(embed_fq2(F4, 0), np.zeros((2, 2)))
    eta = 2  # code of eta = 0 + 1*eta
    E = embed_fq2(F4, eta)
    assert E.tolist() == [[0, 1], [1, 1]]
    assert np.array_equal(matmul_mod(E, E, 2), (E + np.eye(2, dtype=np.int64)) % 2)


@pytest.mark.parametrize("p,eta_poly", [(2, None), (3, None), (3, (2, 1, 1)), (3, (2, 2, 1))])
def test_embed_is_injective_ring_hom(p, eta_poly):
    F = quadratic_extension(p, eta_poly)
    mats = np.array([embed_fq2(F, x) for x in range(F.size)])
    assert len({m.tobytes() for m in mats}) == F.size
    for x, y in product(range(F.size), repeat=2):
        assert np.array_equal(matmul_mod(mats[x], mats[y], p), mats[F.mul(x, y)])
        assert np.array_equal((mats[x] + mats[y]) % p, mats[F.add(x, y)])
    assert np.array_equal(unembed_fq2(F, mats), np.arange(F.size))


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (3, 2), (2, 4)])
def test_field_axioms(p, k):
    F = FiniteField.of_order(p, k)
    assert F.size == p ** k
    nz = np.arange(1, F.size)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    g = F.generator
    assert len({F.power(g, j) for j in range(F.size - 1)}) == F.size - 1  # cyclic
    for a in range(F.size):
        assert F.frobenius(a, k) == a


def test_field_polynomials():
    F = FiniteField.prime(2)
    assert F.irreducibles(2) == [(1, 1, 1)]
    assert (1, 1, 0, 0, 1) in F.irreducibles(4)
    assert len(F.irreducibles(4)) == 3
    assert len(FiniteField.prime(3).irreducibles(2)) == 3
    q, r = F.poly_divmod((1, 0, 1, 0, 1), (1, 1, 1))
    assert r == () or not any(r)
    assert F.poly_mul(q, (1, 1, 1)) == (1, 0, 1, 0, 1)


# -- exact cyclotomics ------------------------------------------------------------

@given(st.integers(1, 36), st.integers(0, 200), st.integers(0, 200))
def test_roots_multiply(m, a, b):
    assert Cyclotomic.root(m, a) * Cyclotomic.root(m, b) == Cyclotomic.root(m, (a + b) % m)


@given(st.sampled_from([3, 4, 6, 8, 12, 15]), st.lists(st.integers(-3, 3), min_size=1, max_size=15),
       st.lists(st.integers(-3, 3), min_size=1, max_size=15), st.lists(st.integers(-3, 3), min_size=1, max_size=15))
@settings(max_examples=60)
def test_cyclotomic_ring_laws(m, a, b, c):
    x, y, z = (Cyclotomic.from_counts(m, np.resize(v, m)) for v in (a, b, c))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()
    n = x * x.conjugate()
    assert n == n.conjugate()
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-9


def test_cyclotomic_normal_form():
    for m in (1, 2, 3, 4, 6, 12, 15, 80):
        assert len(cyclotomic_polynomial(m)) == totient(m) + 1
        total = sum((Cyclotomic.root(m, k) for k in range(m)), Cyclotomic.rational(0))
        assert total.is_zero() or m == 1
    # 1 + zeta_3 + zeta_3^2 = 0 computed on raw histograms
    nf = normal_forms(np.array([[1, 1, 1], [2, 0, 0]]), 3)
    assert not np.any(nf[0]) and np.any(nf[1])
    half = Cyclotomic.rational(Fraction(1, 2), 4)
    assert (half * 2).to_fraction() == 1
    assert Cyclotomic.root(4, 1) * Cyclotomic.root(4, 1) == Cyclotomic.rational(-1)


@given(st.integers(1, 9), st.integers(0, 8))
def test_lift_preserves_value(k, e):
    z = Cyclotomic.root(k, e % k)
    assert z.lift(k * 6) == z


# -- linear algebra helpers --------------------------------------------------------

@pytest.mark.parametrize("p", PS)
def test_inv_det_mod(p, rng):
    A = rng.integers(p, size=(500, 4, 4))
    A = A[det_mod(A, p) != 0]
    assert np.all(matmul_mod(A, inv_mod(A, p), p) == np.eye(4, dtype=np.int64))
    assert rank_mod(np.eye(4, dtype=np.int64), p) == 4


@given(st.integers(0, 2 ** 16 - 1))
def test_encode_roundtrip(code):
    M = decode(np.array([code]), 2, 4)
    assert int(encode(M, 2)[0]) == code
