"""Multiplicity of the trivial character in a restriction."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from cusplab.characters.gl2 import ClassFunction

EXHAUSTIVE_PAIRS = 1 << 20
SAMPLED_PAIRS = 10_000


class NotASubgroup(ValueError):
    pass


def _ops(chi):
    if isinstance(chi, ClassFunction):
        return chi.table.mul, chi.table.key
    ctx = getattr(chi, "ctx", None)
    if ctx is None:
        raise TypeError(f"no group operations known for {type(chi).__name__}")
    return ctx.mul, ctx.key


def check_closed(S: np.ndarray, mul, key, seed: int = 0) -> None:
    """Product closure of S, exhaustively when small and on sampled pairs otherwise."""
    keys = np.unique(key(S))
    if len(keys) != len(S):
        raise NotASubgroup("repeated elements")
    if len(S) ** 2 <= EXHAUSTIVE_PAIRS:
        prods = mul(S[:, None], S[None])
    else:
        rng = np.random.default_rng(seed)
        i, j = rng.integers(len(S), size=(2, SAMPLED_PAIRS))
        prods = mul(S[i], S[j])
    pk = key(prods).ravel()
    pos = np.clip(np.searchsorted(keys, pk), 0, len(keys) - 1)
    if not np.all(keys[pos] == pk):
        raise NotASubgroup("not closed under products")


def trivial_multiplicity(chi, S, check: bool = True) -> Fraction:
    """(1/|S|) sum_{s in S} chi(s) for a subgroup S of chi's domain."""
    S = np.asarray(S, dtype=np.int64)
    if not len(S):
        raise NotASubgroup("empty set")
    if check:
        check_closed(S, *_ops(chi))
    total = chi.character_sum(S) / len(S)
    if not total.is_rational():
        raise ArithmeticError(f"irrational average {total}")
    return total.to_fraction()
