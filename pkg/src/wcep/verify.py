"""Residual characterization and structural checks for weighted core-EP inverses.

``residuals`` measures how well a candidate ``X`` satisfies the three
defining equations; a matrix satisfying all three is the weighted core-EP
inverse, so ``check_wcep_axioms`` is the acceptance oracle for every
representation.  The remaining checks confirm range/null-space, projector
and outer-inverse relations between ``X`` and related matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import (
    DEFAULT_TOL,
    Tolerance,
    numerical_rank,
    pinv,
    power,
    range_basis,
    spectral_norm,
)
from .errors import DimensionError, ValidationError
from .genin import WeightedPair, drazin, wcep_def, weighted_drazin

__all__ = [
    "ResidualReport",
    "SubspaceCompareResult",
    "residuals",
    "check_wcep_axioms",
    "subspace_equal",
    "subspace_contained",
    "check_prop31",
    "check_prop32",
    "check_prop33",
    "check_thm41",
    "check_inverse_along",
    "check_bc_inverse",
    "check_all_properties",
]


@dataclass(frozen=True)
class ResidualReport:
    """Spectral-norm residuals of the three defining equations.

    ``r1 = ||X W (AW)^{k+1} - (AW)^k||``, ``r2 = ||AW X W X - X||``,
    ``r3 = ||(WAW X)^* - WAW X||``.  Relative forms divide by
    ``1 + ||(AW)^k||``, ``1 + ||X||`` and ``1 + ||WAW X||``.
    """

    r1: float
    r2: float
    r3: float
    r1_rel: float
    r2_rel: float
    r3_rel: float
    scales: tuple[float, float, float]
    passed: bool

    @property
    def absolute(self) -> tuple[float, float, float]:
        return (self.r1, self.r2, self.r3)

    @property
    def relative(self) -> tuple[float, float, float]:
        return (self.r1_rel, self.r2_rel, self.r3_rel)


@dataclass(frozen=True)
class SubspaceCompareResult:
    equal: bool
    rank_lhs: int
    rank_rhs: int
    rank_union: int


def residuals(p: WeightedPair, x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> ResidualReport:
    """Residual norms of ``x`` against the defining equations, with verdict.

    The verdict requires every relative residual to be at most
    ``residual_rtol`` and every absolute residual to be at most
    ``residual_atol`` times the magnitude of the products forming it.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (p.m, p.n):
        raise DimensionError(f"X must be {p.m}x{p.n}, got {x.shape[0]}x{x.shape[1]}")
    awk = power(p.aw, p.k)
    w_awk1 = p.w @ (awk @ p.aw)
    wawx = p.waw @ x
    awxwx = p.aw @ x @ p.w @ x

    r1 = spectral_norm(x @ w_awk1 - awk)
    r2 = spectral_norm(awxwx - x)
    r3 = spectral_norm(wawx.conj().T - wawx)

    nx = spectral_norm(x)
    nawk = spectral_norm(awk)
    nwawx = spectral_norm(wawx)
    r1_rel = r1 / (1.0 + nawk)
    r2_rel = r2 / (1.0 + nx)
    r3_rel = r3 / (1.0 + nwawx)

    scales = (
        1.0 + nx * spectral_norm(w_awk1) + nawk,
        1.0 + spectral_norm(p.aw) * spectral_norm(p.w) * nx * nx + nx,
        1.0 + 2.0 * nwawx,
    )
    rel_ok = max(r1_rel, r2_rel, r3_rel) <= tol.residual_rtol
    abs_ok = all(r <= tol.residual_atol * s for r, s in zip((r1, r2, r3), scales))
    return ResidualReport(r1, r2, r3, r1_rel, r2_rel, r3_rel, scales, rel_ok and abs_ok)


def check_wcep_axioms(p: WeightedPair, x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return residuals(p, x, tol).passed


def _basis(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    return range_basis(a, tol)


def _gap_rank(b1: np.ndarray, b2: np.ndarray, tol: Tolerance) -> int:
    """Rank of ``[b1 | b2]`` for orthonormal bases, decided at ``residual_rtol``.

    Singular values of the concatenation are ``sqrt(1 +- cos(theta_i))`` for
    the principal angles; a direction counts only if it separates the spaces
    by more than the verification threshold.
    """
    cat = np.hstack([b1, b2])
    if cat.shape[1] == 0:
        return 0
    s = np.linalg.svd(cat, compute_uv=False)
    return int(np.count_nonzero(s > tol.residual_rtol * max(1.0, float(s[0]))))


def subspace_equal(
    g1: np.ndarray, g2: np.ndarray, mode: str = "range", tol: Tolerance = DEFAULT_TOL
) -> SubspaceCompareResult:
    """Compare column spaces (``mode="range"``) or null spaces (``mode="nullspace"``).

    Null spaces are compared as the column spaces of the conjugate
    transposes, i.e. as row spaces.
    """
    if mode == "nullspace":
        if g1.shape[1] != g2.shape[1]:
            raise DimensionError("null spaces live in different spaces (column counts differ)")
        g1, g2 = g1.conj().T, g2.conj().T
    elif mode == "range":
        if g1.shape[0] != g2.shape[0]:
            raise DimensionError("ranges live in different spaces (row counts differ)")
    else:
        raise ValidationError(f"mode must be 'range' or 'nullspace', got {mode!r}")
    b1, b2 = _basis(g1, tol), _basis(g2, tol)
    r1, r2 = b1.shape[1], b2.shape[1]
    ru = _gap_rank(b1, b2, tol)
    return SubspaceCompareResult(equal=(r1 == r2 == ru), rank_lhs=r1, rank_rhs=r2, rank_union=ru)


def subspace_contained(
    small: np.ndarray, big: np.ndarray, mode: str = "range", tol: Tolerance = DEFAULT_TOL
) -> bool:
    """``R(small) ⊆ R(big)`` (``mode="range"``) or row-space inclusion (``mode="rowspace"``)."""
    if mode == "rowspace":
        small, big = small.conj().T, big.conj().T
    elif mode != "range":
        raise ValidationError(f"mode must be 'range' or 'rowspace', got {mode!r}")
    if small.shape[0] != big.shape[0]:
        raise DimensionError("subspaces live in different spaces")
    bs, bb = _basis(small, tol), _basis(big, tol)
    return _gap_rank(bs, bb, tol) == bb.shape[1]


def _close(lhs: np.ndarray, rhs: np.ndarray, tol: Tolerance) -> bool:
    return spectral_norm(lhs - rhs) <= tol.residual_rtol * (1.0 + spectral_norm(rhs))


def check_prop31(p: WeightedPair, x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``R(X) = R((AW)^k)`` and ``N(X) = N([(WA)^k]^*)``."""
    awk = power(p.aw, p.k)
    wak_h = power(p.wa, p.k).conj().T
    return (
        subspace_equal(x, awk, "range", tol).equal
        and subspace_equal(x, wak_h, "nullspace", tol).equal
    )


def _direct_sum(t: np.ndarray, tol: Tolerance) -> bool:
    d = t.shape[0]
    r = numerical_rank(t, tol)
    rb = _basis(t, tol)
    # null-space basis from the trailing right singular vectors
    _, _, vh = np.linalg.svd(t)
    nb = vh[r:].conj().T
    if rb.shape[1] + nb.shape[1] != d:
        return False
    return _gap_rank(rb, nb, tol) == d


def check_prop32(p: WeightedPair, x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``R(XW) ⊕ N(XW) = C^m`` and ``R(WX) ⊕ N(WX) = C^n``."""
    return _direct_sum(x @ p.w, tol) and _direct_sum(p.w @ x, tol)


def check_prop33(p: WeightedPair, x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``WAW X`` is the orthogonal and ``W X WA`` an oblique projector onto ``R((WA)^k)``."""
    wak = power(p.wa, p.k)
    orth = p.waw @ x
    obl = p.w @ x @ p.wa
    return (
        _close(orth @ orth, orth, tol)
        and _close(orth.conj().T, orth, tol)
        and subspace_equal(orth, wak, "range", tol).equal
        and _close(obl @ obl, obl, tol)
        and subspace_equal(obl, wak, "range", tol).equal
    )


def check_thm41(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Weighted core-EP and weighted Drazin inverses differ by a projector factor."""
    x = wcep_def(p, tol)
    xd = weighted_drazin(p, tol)
    wak = power(p.wa, p.k)
    orth = wak @ pinv(wak, tol)
    obl = p.wa @ drazin(p.wa, tol)
    return _close(xd @ orth, x, tol) and _close(x @ obl, xd, tol)


def check_inverse_along(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``X`` is the inverse of ``WAW`` along ``D = A (WA)^k [(WA)^k]^*``."""
    x = wcep_def(p, tol)
    wak = power(p.wa, p.k)
    d = p.a @ wak @ wak.conj().T
    b = p.waw
    return (
        _close(x @ b @ d, d, tol)
        and _close(d @ b @ x, d, tol)
        and subspace_contained(x, d, "rowspace", tol)
        and subspace_contained(x, d, "range", tol)
    )


def check_bc_inverse(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``X`` is the ``((AW)^k, [(WA)^k]^*)``-inverse of ``WAW``."""
    x = wcep_def(p, tol)
    b = power(p.aw, p.k)
    c = power(p.wa, p.k).conj().T
    waw = p.waw
    return (
        _close(x @ waw @ b, b, tol)
        and _close(c @ waw @ x, c, tol)
        and subspace_contained(x, b, "range", tol)
        and subspace_contained(x, c, "rowspace", tol)
    )


def check_all_properties(p: WeightedPair, x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> dict[str, bool]:
    return {
        "prop31": check_prop31(p, x, tol),
        "prop32": check_prop32(p, x, tol),
        "prop33": check_prop33(p, x, tol),
        "thm41": check_thm41(p, tol),
        "inverse_along": check_inverse_along(p, tol),
        "bc_inverse": check_bc_inverse(p, tol),
    }
