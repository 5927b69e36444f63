"""Exact arithmetic: cyclotomic numbers, small finite fields, and o_2."""

from cusplab.ring_core.cyclotomic import Cyclotomic, lcm
from cusplab.ring_core.fields import FiniteField
from cusplab.ring_core.local_ring import (
    AdditiveCharacter,
    LocalRing,
    RingElem,
    UnitCharacter,
    embed_fq2,
    psi_eval,
    quadratic_extension,
    unembed_fq2,
    unit_characters,
)

__all__ = [
    "AdditiveCharacter",
    "Cyclotomic",
    "FiniteField",
    "LocalRing",
    "RingElem",
    "UnitCharacter",
    "embed_fq2",
    "lcm",
    "psi_eval",
    "quadratic_extension",
    "unembed_fq2",
    "unit_characters",
]
