"""Index, Drazin and core-EP inverses and the pseudoinverse formulas for the
W-weighted core-EP inverse.

Notation follows the usual conventions: for ``A`` (m x n) and a weight ``W``
(n x m), ``k = max(ind(AW), ind(WA))``.  The weighted core-EP inverse of
``A`` is the m x n matrix ``X`` solving

    X W (AW)^{k+1} = (AW)^k,   A W X W X = X,   (W A W X)^* = W A W X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .dense import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    numerical_rank,
    pinv,
    power,
    zeros,
)
from .errors import DimensionError, ValidationError

__all__ = [
    "WeightedPair",
    "index",
    "drazin",
    "core_ep",
    "wcep_def",
    "wcep_eq13",
    "wcep_eq28",
    "wcep_eq29",
    "weighted_drazin",
    "resolve_exponent",
]


def index(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest ``k >= 0`` with ``rank(a^k) == rank(a^(k+1))``.

    Ranks are numerical ranks of matrix powers; the search stops at ``n``.
    """
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"index requires a square matrix, got shape {a.shape}")
    n = a.shape[0]
    prev = n
    for k in range(n):
        cur = numerical_rank(power(a, k + 1), tol)
        if cur == prev:
            return k
        prev = cur
    return n


def drazin(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse ``A^l (A^(2l+1))^+ A^l`` with ``l = ind(A)``."""
    l = index(a, tol)
    al = power(a, l)
    return al @ pinv(power(a, 2 * l + 1), tol) @ al


def core_ep(a: np.ndarray, l: int | None = None, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Core-EP inverse ``A^l (A^(l+1))^+``.

    ``l`` defaults to ``max(ind(A), 1)``; a supplied ``l`` below the index is
    rejected.
    """
    k = index(a, tol)
    if l is None:
        l = max(k, 1)
    elif l < k:
        raise ValidationError(f"exponent l={l} is below ind(A)={k}")
    return _core_ep(a, l, tol)


def _core_ep(a: np.ndarray, l: int, tol: Tolerance) -> np.ndarray:
    al = power(a, l)
    return al @ pinv(al @ a, tol)


@dataclass(frozen=True)
class WeightedPair:
    """A matrix ``a`` (m x n) with weight ``w`` (n x m) and cached indices.

    ``k_aw``, ``k_wa`` and ``k`` are computed on construction using ``tol``.
    """

    a: np.ndarray
    w: np.ndarray
    tol: Tolerance = DEFAULT_TOL
    k_aw: int = field(init=False)
    k_wa: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        a = as_matrix(self.a, "A")
        w = as_matrix(self.w, "W")
        if a.shape[0] != w.shape[1] or a.shape[1] != w.shape[0]:
            raise DimensionError(
                f"weight must be {a.shape[1]}x{a.shape[0]} for A of shape "
                f"{a.shape[0]}x{a.shape[1]}, got {w.shape[0]}x{w.shape[1]}"
            )
        a.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "w", w)
        k_aw = index(a @ w, self.tol)
        k_wa = index(w @ a, self.tol)
        object.__setattr__(self, "k_aw", k_aw)
        object.__setattr__(self, "k_wa", k_wa)
        object.__setattr__(self, "k", max(k_aw, k_wa))

    @property
    def m(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.a.shape[1]

    @cached_property
    def aw(self) -> np.ndarray:
        return self.a @ self.w

    @cached_property
    def wa(self) -> np.ndarray:
        return self.w @ self.a

    @cached_property
    def waw(self) -> np.ndarray:
        return self.w @ self.a @ self.w


def resolve_exponent(p: WeightedPair, l: int | None) -> int:
    """Validate an exponent choice ``l >= k``; ``None`` selects ``k``."""
    if l is None:
        return p.k
    if l < p.k:
        raise ValidationError(f"exponent l={l} is below k={p.k}")
    return int(l)


def wcep_def(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``A [(WA)^core-EP]^2``, the closed form behind the three equations."""
    c = _core_ep(p.wa, max(p.k_wa, 1), tol)
    return p.a @ c @ c


def wcep_eq13(p: WeightedPair, l: int | None = None, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Two-pseudoinverse form ``[W (AW)^(l+1) ((AW)^l)^+]^+``."""
    l = resolve_exponent(p, l)
    awl = power(p.aw, l)
    inner = p.w @ (awl @ p.aw) @ pinv(awl, tol)
    return pinv(inner, tol)


def wcep_eq28(p: WeightedPair, l: int | None = None, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Single-pseudoinverse form ``(AW)^l [W (AW)^(l+1)]^+``."""
    l = resolve_exponent(p, l)
    awl = power(p.aw, l)
    return awl @ pinv(p.w @ (awl @ p.aw), tol)


def wcep_eq29(p: WeightedPair, l: int | None = None, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Single-pseudoinverse form ``A (WA)^l [(WA)^(l+2)]^+``."""
    l = resolve_exponent(p, l)
    wal = power(p.wa, l)
    wa2 = p.wa @ p.wa
    return p.a @ wal @ pinv(wal @ wa2, tol)


def weighted_drazin(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """W-weighted Drazin inverse ``A [(WA)^D]^2``."""
    d = drazin(p.wa, tol)
    return p.a @ d @ d


def zero_result(p: WeightedPair) -> np.ndarray:
    return zeros(p.m, p.n)
