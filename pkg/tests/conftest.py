from functools import lru_cache

import numpy as np
import pytest

from cusplab.cuspidality import enumerate_representations
from cusplab.matgroup import GroupContext
from cusplab.orbits import orbit_reps_quadratic
from cusplab.ring_core.local_ring import LocalRing

RINGS = ("zp2", "dual")


@lru_cache(maxsize=None)
def enumeration(ring: str, psi_tilde: int = 0, psi_scale: int = 1, include=("beta1", "beta2", "quartic")):
    """Shared across test modules; the q=2 pipeline takes a few seconds per ring."""
    return enumerate_representations(2, ring, psi_scale=psi_scale, psi_tilde=psi_tilde,
                                     include=include, certificates=psi_tilde == 0 and psi_scale == 1)


def family(pairs, name):
    return [(rep, rp) for rep, rp in pairs if rep.family.name.startswith(name)]


@pytest.fixture(params=RINGS)
def ring(request):
    return request.param


@pytest.fixture
def ctx(ring):
    return GroupContext(LocalRing(2, ring))


@pytest.fixture(scope="session")
def betas():
    return orbit_reps_quadratic(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
