from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from cusplab.characters import gl2_character_table, trivial_multiplicity
from cusplab.characters.multiplicity import NotASubgroup
from cusplab.ring_core.cyclotomic import Cyclotomic


@pytest.fixture(scope="module", params=[2, 3, 4, 9])
def table(request):
    return gl2_character_table(request.param)


def test_sizes(table):
    Q = table.Q
    assert table.order == (Q * Q - 1) * (Q * Q - Q)
    assert len(table.classes) == len(table.characters) == Q * Q - 1
    assert sum(c.size for c in table.classes) == table.order
    assert sum(c.dimension ** 2 for c in table.characters) == table.order
    fams = Counter(c.family for c in table.characters)
    want = Counter({"linear": Q - 1, "steinberg": Q - 1, "principal": (Q - 1) * (Q - 2) // 2,
                    "cuspidal": Q * (Q - 1) // 2})
    assert fams == +want  # unary plus drops the empty principal family at Q = 2


def test_orthogonality(table):
    assert table.first_orthogonality()
    assert table.second_orthogonality()
    for chi in table.characters[:6]:
        assert chi.norm() == 1


def test_dimensions_by_family(table):
    Q = table.Q
    want = {"linear": 1, "steinberg": Q, "principal": Q + 1, "cuspidal": Q - 1}
    for chi in table.characters:
        assert chi.dimension == want[chi.family]
        assert chi(np.eye(2, dtype=np.int64)) == Cyclotomic.rational(chi.dimension)


def test_small_tables():
    assert sorted(c.dimension for c in gl2_character_table(2).characters) == [1, 1, 2]
    t3 = gl2_character_table(3)
    assert len(t3.characters) == 8 and t3.order == 48
    t4 = gl2_character_table(4)
    assert Counter(c.dimension for c in t4.characters) == {1: 3, 3: 6, 4: 3, 5: 3}
    assert t4.order == 180


def test_class_functions_are_constant_on_classes(rng):
    T = gl2_character_table(3)
    els = T.elements()
    idx = T.class_indices(els)
    assert np.array_equal(np.bincount(idx), [c.size for c in T.classes])
    g = els[rng.integers(len(els), size=200)]
    x = els[rng.integers(len(els), size=200)]
    xi = np.array([np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]]) % 3 for a in x])
    det_inv = np.array([pow(int(d), -1, 3) for d in T.det(x)])
    xi = (xi * det_inv[:, None, None]) % 3
    conj = T.mul(T.mul(x, g), xi)
    assert np.array_equal(T.class_indices(conj), T.class_indices(g))


def test_steinberg_on_unipotent():
    T = gl2_character_table(4)
    st = next(c for c in T.characters if c.family == "steinberg")
    assert st.dimension == 4
    U = np.array([[[1, a], [0, 1]] for a in range(4)])
    assert trivial_multiplicity(st, U) == 1
    lin = next(c for c in T.characters if c.family == "linear")
    assert trivial_multiplicity(lin, U) == 1
    with pytest.raises(NotASubgroup):
        trivial_multiplicity(st, U[:3])


def test_nontrivial_linear_on_whole_group():
    T = gl2_character_table(3)
    chi = [c for c in T.characters if c.family == "linear"][1]
    assert trivial_multiplicity(chi, T.elements()) == Fraction(0)


def test_json_export():
    data = gl2_character_table(2).to_json()
    assert len(data["classes"]) == 3 and len(data["characters"]) == 3
