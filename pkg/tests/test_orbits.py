import numpy as np
import pytest
from sympy import GF, Poly, symbols

from cusplab.matgroup import residue_gl_elements
from cusplab.orbits import (
    are_conjugate,
    centralizer,
    char_poly,
    char_poly_batch,
    classify,
    companion,
    expand,
    factor,
    minimal_poly,
    orbit_census,
    orbit_reps_quadratic,
    quartic_orbit_reps,
)
from cusplab.ring_core.fields import FiniteField
from cusplab.ring_core.linalg import inv_mod, matmul_mod

X = symbols("X")


def _sympy_factor(f, p):
    poly = Poly(list(reversed(f)), X, domain=GF(p))
    _, facs = poly.factor_list()
    out = []
    for g, e in facs:
        coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
        out.append((tuple(coeffs), e))
    return sorted(out)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("deg", [1, 2, 3, 4])
def test_factor_matches_sympy(p, deg):
    F = FiniteField.prime(p)
    for f in F.monic_polys(deg):
        got = factor(f, p)
        assert sorted(got) == _sympy_factor(f, p), f
        assert expand(got, p) == tuple(f)
        for g, _ in got:
            assert F.is_irreducible(g)


def test_factor_examples():
    assert factor((1, 0, 1, 0, 1), 2) == [((1, 1, 1), 2)]
    assert factor((1, 1), 2) == [((1, 1), 1)]
    assert factor((1, 1, 0, 0, 1), 2) == [((1, 1, 0, 0, 1), 1)]


def test_char_poly_examples(betas):
    beta1, beta2 = betas
    square = (1, 0, 1, 0, 1)  # (X^2+X+1)^2 over F_2
    assert char_poly(beta1, 2) == square
    assert char_poly(beta2, 2) == square
    assert char_poly(np.eye(4, dtype=np.int64), 2) == (1, 0, 0, 0, 1)  # (X-1)^4 = X^4+1
    assert char_poly(np.eye(4, dtype=np.int64), 3) == (1, 2, 0, 2, 1)


def test_char_poly_batch_vs_sympy(rng):
    from sympy import Matrix
    for p in (2, 3):
        B = rng.integers(p, size=(40, 4, 4))
        cps = char_poly_batch(B, p)
        for b, cp in zip(B, cps):
            ref = Matrix(b.tolist()).charpoly(X).all_coeffs()
            assert tuple(int(c) % p for c in reversed(ref)) == tuple(cp)


def test_quadratic_orbit_reps(betas):
    beta1, beta2 = betas
    assert beta1[:2, 2:].tolist() == [[1, 0], [0, 1]]
    assert beta1[:2, :2].tolist() == [[0, 1], [1, 1]]
    assert np.array_equal(beta1[:2, :2], beta1[2:, 2:])
    c1, c2 = classify(beta1, 2), classify(beta2, 2)
    assert c1.primary and c1.regular and not c1.strongly_cuspidal_eligible
    assert c2.primary and not c2.regular
    assert (c1.centralizer_order, c2.centralizer_order) == (12, 180)
    assert not are_conjugate(beta1, beta2, 2)
    assert c1 != c2


@pytest.mark.parametrize("eta", [(1, 0, 1), (2, 1, 1), (2, 2, 1)])
def test_quadratic_orbit_reps_q3(eta):
    beta1, beta2 = orbit_reps_quadratic(3, eta)
    assert char_poly(beta1, 3) == FiniteField.prime(3).poly_mul(eta, eta)
    assert classify(beta1, 3).regular and not classify(beta2, 3).regular
    assert classify(beta1, 3).centralizer_order == 72
    assert classify(beta2, 3).centralizer_order == 80 * 72  # |GL_2(F_9)|


def test_quartic_orbits():
    reps = quartic_orbit_reps(2)
    assert len(reps) == 3
    for r in reps:
        c = classify(r, 2)
        assert c.strongly_cuspidal_eligible and c.regular and c.centralizer_order == 15
    cls = classify(companion((1, 1, 0, 0, 1), 2), 2)
    assert cls.primary and cls.regular and cls.strongly_cuspidal_eligible


def test_minimal_poly():
    assert minimal_poly(np.eye(4, dtype=np.int64), 2) == (1, 1)
    b1, b2 = orbit_reps_quadratic(2)
    assert minimal_poly(b1, 2) == (1, 0, 1, 0, 1)
    assert minimal_poly(b2, 2) == (1, 1, 1)


def test_centralizer_examples(ctx, betas):
    beta1, beta2 = betas
    assert centralizer(ctx, beta2).order() == 180
    assert centralizer(ctx, beta1).order() == 12
    assert centralizer(ctx, np.eye(4, dtype=np.int64)).order() == 20160


def test_classify_conjugation_invariant(betas, rng):
    G = residue_gl_elements(4, 2)
    quartic = quartic_orbit_reps(2)[0]
    for beta in (*betas, quartic):
        ref = classify(beta, 2).invariants()
        g = G[rng.integers(len(G), size=1000)]
        conj = matmul_mod(matmul_mod(g, beta, 2), inv_mod(g, 2), 2)
        for b in conj[:200]:
            assert classify(b, 2).invariants() == ref
        assert np.all(char_poly_batch(conj, 2) == np.array(classify(beta, 2).char_poly))


def test_orbit_census_q2():
    total, orbits = orbit_census((1, 0, 1, 0, 1), 2)
    assert len(orbits) == 2
    assert sorted((o.size, o.centralizer_order) for o in orbits) == [(112, 180), (1680, 12)]
    assert total == 1680 + 112
    assert all(20160 // o.centralizer_order == o.size for o in orbits)
