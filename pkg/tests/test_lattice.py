import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from cusplab.characters.lattice import RowEchelon, egcd, smith


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_egcd(a, b):
    g, s, t = egcd(a, b)
    assert g >= 0 and s * a + t * b == g
    assert g == np.gcd(a, b)


square = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(-6, 6), min_size=k, max_size=k), min_size=k, max_size=k))


@given(square)
@settings(max_examples=80)
def test_smith_decomposition(A):
    d, P, Q = smith(A)
    D = Matrix(P) * Matrix(A) * Matrix(Q)
    assert D == Matrix.diag(*d)
    assert abs(Matrix(P).det()) == 1 and abs(Matrix(Q).det()) == 1
    assert all(x >= 0 for x in d)
    nonzero = [x for x in d if x]
    ref = [abs(int(x)) for x in invariant_factors(Matrix(A), domain=ZZ) if x]
    assert sorted(nonzero) == sorted(ref)


def test_row_echelon_relations():
    ech = RowEchelon(2, 5)
    ech.add([2, 0], [1])
    ech.add([4, 0], [3])  # 2 * first row minus this one is zero in e, aux 2*1 - 3 = -1
    ech.add([0, 3], [0])
    assert ech.rank == 2
    assert len(ech.zero_aux) == 1 and ech.zero_aux[0][0] in (1, 4)
    A, aux = ech.matrix()
    assert len(A) == 2
