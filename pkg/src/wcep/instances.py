"""Seeded random weighted pairs with a prescribed index.

Pairs are assembled in GAS form

    A = P blockdiag(C, N_a) Q^{-1},    W = Q blockdiag(D, N_w) P^{-1},

where ``P``, ``Q``, ``C``, ``D`` are dense with entries drawn uniformly from
[0, 1) plus a diagonal shift equal to their dimension (which makes them
strictly diagonally dominant, hence invertible and well conditioned), and
``N_a``, ``N_w`` are zero-padded nilpotent shift blocks.
"""

from __future__ import annotations

import numpy as np

from .dense import DEFAULT_TOL, Tolerance
from .errors import NumericalError, ValidationError
from .genin import WeightedPair
from .reps import GasFactors

__all__ = ["gen_random_pair", "gen_random_instance", "max_core_rank"]


def _shift_block(d: int) -> np.ndarray:
    j = np.zeros((d, d))
    if d > 1:
        j[np.arange(d - 1), np.arange(1, d)] = 1.0
    return j


def _dense(rng: np.random.Generator, d: int, complex_entries: bool) -> np.ndarray:
    x = rng.random((d, d)).astype(complex)
    if complex_entries:
        x += 1j * rng.random((d, d))
    return x + d * np.eye(d)


def _nilpotent_order(m: int, n: int, target_index: int) -> int:
    """Size of the shift block giving index ``target_index``."""
    if target_index == 0:
        if m != n:
            raise ValidationError("index 0 needs a square pair (m == n)")
        return 0
    # J^2 of order 2t-1 has nilpotency index t; otherwise fall back to J_t.
    strict = 2 * target_index - 1
    return strict if strict < min(m, n) else target_index


def max_core_rank(m: int, n: int, target_index: int) -> int:
    """Largest invertible block size compatible with the requested index."""
    if target_index < 0 or target_index > min(m, n):
        raise ValidationError(
            f"target index {target_index} infeasible for {m}x{n}; need 0 <= index <= {min(m, n)}"
        )
    d = _nilpotent_order(m, n, target_index)
    if target_index == 0:
        return m
    return min(m, n) - max(d, 1)


def gen_random_instance(
    m: int,
    n: int,
    target_index: int,
    seed: int,
    *,
    core_rank: int | None = None,
    complex_entries: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[WeightedPair, GasFactors | None]:
    """Random pair with ``max(ind(AW), ind(WA)) == target_index`` and its GAS factors.

    The GAS factors are ``None`` when ``min(m, n)`` is too small for both
    nilpotent blocks to be nilpotent themselves (the identity-weighted
    fallback is used then).

    Parameters
    ----------
    core_rank : int, optional
        Size of the invertible blocks ``C``, ``D``. Defaults to the largest
        feasible size.
    """
    if m < 1 or n < 1:
        raise ValidationError(f"dimensions must be positive, got {m}x{n}")
    rmax = max_core_rank(m, n, target_index)
    r = rmax if core_rank is None else int(core_rank)
    if not 0 <= r <= rmax:
        raise ValidationError(f"core_rank must lie in [0, {rmax}], got {r}")
    d = _nilpotent_order(m, n, target_index)
    strict = target_index == 0 or d == 2 * target_index - 1

    rng = np.random.default_rng(seed)
    p = _dense(rng, m, complex_entries)
    q = _dense(rng, n, complex_entries)
    c = _dense(rng, r, complex_entries)
    dd = _dense(rng, r, complex_entries)

    ba = np.zeros((m, n), dtype=complex)
    bw = np.zeros((n, m), dtype=complex)
    ba[:r, :r] = c
    bw[:r, :r] = dd
    ba[r : r + d, r : r + d] = _shift_block(d)
    bw[r : r + d, r : r + d] = _shift_block(d) if strict else np.eye(d)

    a = p @ ba @ np.linalg.inv(q)
    w = q @ bw @ np.linalg.inv(p)
    pair = WeightedPair(a, w, tol)
    if pair.k != target_index:
        raise NumericalError(
            f"generated pair has index {pair.k}, expected {target_index} (seed={seed})"
        )
    gas = GasFactors(p=p, q=q, r1=r) if strict else None
    return pair, gas


def gen_random_pair(
    m: int,
    n: int,
    target_index: int,
    seed: int,
    *,
    core_rank: int | None = None,
    complex_entries: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> WeightedPair:
    pair, _ = gen_random_instance(
        m, n, target_index, seed, core_rank=core_rank, complex_entries=complex_entries, tol=tol
    )
    return pair
