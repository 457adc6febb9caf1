"""Decomposition-based representations of the weighted core-EP inverse.

The weighted core-EP inverse is the outer inverse of ``WAW`` whose range and
null space are those of ``G = A (WA)^k [(WA)^k]^+``.  Any full-rank
factorization of ``G`` therefore yields it through ``U (V WAW U)^{-1} V``;
the functions below use the SVD, a pivoted QR, or caller-supplied GAS
factors to build one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    numerical_rank,
    pinv,
    pivoted_qr,
    power,
    spectral_norm,
    svd,
    zeros,
)
from .errors import DimensionError, NumericalError, SingularMatrixError, ValidationError
from .genin import WeightedPair, _core_ep, index

__all__ = [
    "FullRankFactors",
    "GasFactors",
    "RangeNullSpec",
    "full_rank_decompose",
    "outer_inverse_ts",
    "wcep_generator",
    "wcep_full_rank",
    "wcep_svd_canonical",
    "wcep_gas",
    "wcep_qr",
    "validate_gas",
]


@dataclass(frozen=True)
class FullRankFactors:
    """``g = u @ v`` with ``u`` (m x s) of full column rank, ``v`` (s x n) of full row rank."""

    u: np.ndarray
    v: np.ndarray
    s: int


@dataclass(frozen=True)
class GasFactors:
    """General algebraic structure of a pair ``(A, W)``.

    ``A = p @ blockdiag(A11, A22) @ inv(q)`` and
    ``W = q @ blockdiag(W11, W22) @ inv(p)`` with ``A11`` (r1 x r1) and
    ``W11`` (r2 x r2) invertible; ``A22 W22`` and ``W22 A22`` nilpotent.
    """

    p: np.ndarray
    q: np.ndarray
    r1: int
    r2: int | None = None


@dataclass(frozen=True)
class RangeNullSpec:
    """Generator ``g`` whose range and null space prescribe an outer inverse."""

    g: np.ndarray


def full_rank_decompose(g: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> FullRankFactors:
    """Full-rank factorization from the compact SVD: ``u = U_s diag(s)``, ``v = V_s^*``."""
    f = svd(g)
    s = numerical_rank(g, tol)
    if s == 0:
        raise NumericalError("matrix is numerically zero; it has no full-rank factorization")
    u = f.u[:, :s] * f.sigma[:s]
    v = f.v[:, :s].conj().T
    return FullRankFactors(u=u, v=v, s=s)


def _solve_inner(inner: np.ndarray, rhs: np.ndarray, tol: Tolerance, what: str) -> np.ndarray:
    s = inner.shape[0]
    if numerical_rank(inner, tol) < s:
        raise SingularMatrixError(f"{what} ({s}x{s}) is numerically singular")
    return np.linalg.solve(inner, rhs)


def outer_inverse_ts(a: np.ndarray, f: FullRankFactors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Outer inverse ``U (V A U)^{-1} V`` with range ``R(U)`` and null space ``N(V)``.

    Raises
    ------
    SingularMatrixError
        If ``V A U`` is numerically singular, i.e. the outer inverse with the
        prescribed range and null space does not exist.
    """
    u, v = f.u, f.v
    if v.shape[1] != a.shape[0] or a.shape[1] != u.shape[0]:
        raise DimensionError(
            f"V ({v.shape[0]}x{v.shape[1]}) A ({a.shape[0]}x{a.shape[1]}) "
            f"U ({u.shape[0]}x{u.shape[1]}) does not conform"
        )
    inner = v @ a @ u
    return u @ _solve_inner(inner, v, tol, "VAU")


def wcep_generator(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> RangeNullSpec:
    """``G = A (WA)^k [(WA)^k]^+``."""
    wak = power(p.wa, p.k)
    return RangeNullSpec(g=p.a @ wak @ pinv(wak, tol))


def wcep_full_rank(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``U (V WAW U)^{-1} V`` for a full-rank factorization ``G = UV``."""
    g = wcep_generator(p, tol).g
    if numerical_rank(g, tol) == 0:
        return zeros(p.m, p.n)
    f = full_rank_decompose(g, tol)
    try:
        return outer_inverse_ts(p.waw, f, tol)
    except SingularMatrixError as exc:
        raise NumericalError(f"internal inconsistency in full-rank representation: {exc}") from exc


def wcep_svd_canonical(p: WeightedPair, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Canonical form built from the SVDs of ``A`` and ``W``.

    With ``A = U1 diag(S1, 0) V1^*`` (rank r) and ``W = S diag(S2, 0) T^*``
    (rank s), ``R1`` is the leading s x r block of ``T^* U1`` and ``H1`` the
    leading r x s block of ``V1^* S``.  The result is
    ``U1 [[S1 H1 C^2, 0], [0, 0]] S^*`` where ``C`` is the core-EP inverse of
    ``S2 R1 S1 H1``.
    """
    fa = svd(p.a)
    fw = svd(p.w)
    r = numerical_rank(p.a, tol)
    s = numerical_rank(p.w, tol)
    if r == 0 or s == 0:
        return zeros(p.m, p.n)
    sig1 = fa.sigma[:r]
    sig2 = fw.sigma[:s]
    r1 = (fw.v.conj().T @ fa.u)[:s, :r]
    h1 = (fa.v.conj().T @ fw.u)[:r, :s]
    left = sig1[:, None] * h1  # S1 H1, r x s
    core = (sig2[:, None] * r1) @ left  # S2 R1 S1 H1, s x s
    c = _core_ep_auto(core, tol)
    mid = zeros(p.m, p.n)
    mid[:r, :s] = left @ c @ c
    return fa.u @ mid @ fw.u.conj().T


def _core_ep_auto(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    return _core_ep(a, max(index(a, tol), 1), tol)


def _nilpotent(block: np.ndarray, tol: Tolerance) -> bool:
    d = block.shape[0]
    if d == 0:
        return True
    scale = 1.0 + spectral_norm(block)
    return spectral_norm(power(block, d)) <= tol.residual_rtol * scale**d


def validate_gas(p: WeightedPair, g: GasFactors, tol: Tolerance = DEFAULT_TOL) -> None:
    """Check that ``g`` is a GAS of ``p``; raise :class:`ValidationError` if not.

    Blocks ``A22``, ``W22`` are required to be nilpotent only when square;
    the products ``A22 W22`` and ``W22 A22`` always are.
    """
    m, n = p.m, p.n
    pm = as_matrix(g.p, "P")
    qm = as_matrix(g.q, "Q")
    if pm.shape != (m, m) or qm.shape != (n, n):
        raise ValidationError(f"GAS factors must be {m}x{m} and {n}x{n}")
    r1 = g.r1
    r2 = r1 if g.r2 is None else g.r2
    if r1 != r2:
        raise ValidationError(f"invertible blocks must have equal size, got r1={r1}, r2={r2}")
    if not 0 <= r1 <= min(m, n):
        raise ValidationError(f"block size r1={r1} out of range for {m}x{n}")
    if numerical_rank(pm, tol) < m or numerical_rank(qm, tol) < n:
        raise ValidationError("GAS factors P and Q must be invertible")
    ab = np.linalg.solve(pm, p.a @ qm)
    wb = np.linalg.solve(qm, p.w @ pm)
    for name, blk in (("A", ab), ("W", wb)):
        off = max(spectral_norm(blk[:r1, r1:]) if blk[:r1, r1:].size else 0.0,
                  spectral_norm(blk[r1:, :r1]) if blk[r1:, :r1].size else 0.0)
        if off > tol.residual_rtol * (1.0 + spectral_norm(blk)):
            raise ValidationError(f"P, Q do not block-diagonalize {name} (off-block norm {off:.3e})")
    a11, a22 = ab[:r1, :r1], ab[r1:, r1:]
    w11, w22 = wb[:r1, :r1], wb[r1:, r1:]
    if r1 and (numerical_rank(a11, tol) < r1 or numerical_rank(w11, tol) < r1):
        raise ValidationError("leading GAS blocks A11, W11 must be invertible")
    checks = [("A22 W22", a22 @ w22), ("W22 A22", w22 @ a22)]
    if a22.shape[0] == a22.shape[1]:
        checks += [("A22", a22), ("W22", w22)]
    for name, blk in checks:
        if not _nilpotent(blk, tol):
            raise ValidationError(f"GAS block {name} is not nilpotent")


def wcep_gas(p: WeightedPair, g: GasFactors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``P1 (L1^* WAW P1)^{-1} L1^*`` from validated GAS factors.

    ``P1`` and ``L1`` are the first ``r1`` columns of ``P`` and ``Q``.
    """
    validate_gas(p, g, tol)
    r1 = g.r1
    if r1 == 0:
        return zeros(p.m, p.n)
    p1 = np.asarray(g.p, dtype=complex)[:, :r1]
    l1h = np.asarray(g.q, dtype=complex)[:, :r1].conj().T
    inner = l1h @ p.waw @ p1
    try:
        return p1 @ _solve_inner(inner, l1h, tol, "L1* WAW P1")
    except SingularMatrixError as exc:
        raise ValidationError(f"invalid GAS factors: {exc}") from exc


def wcep_qr(p: WeightedPair, tol: Tolerance = DEFAULT_TOL, variant: str = "r") -> np.ndarray:
    """Representation from the column-pivoted QR ``G P = Q R``.

    ``variant="r"`` evaluates ``Q1 (R1 P^* WAW Q1)^{-1} R1 P^*``;
    ``variant="q"`` evaluates ``Q1 (Q1^* G WAW Q1)^{-1} Q1^* G``.
    """
    if variant not in ("r", "q"):
        raise ValidationError(f"unknown QR variant {variant!r}; use 'r' or 'q'")
    g = wcep_generator(p, tol).g
    f = pivoted_qr(g, tol)
    s = f.numerical_rank
    if s == 0:
        return zeros(p.m, p.n)
    q1 = f.q[:, :s]
    if variant == "r":
        right = np.empty((s, p.n), dtype=complex)
        right[:, f.perm] = f.r[:s, :]  # R1 P^*
    else:
        right = q1.conj().T @ g
    inner = right @ p.waw @ q1
    try:
        return q1 @ _solve_inner(inner, right, tol, "inner QR matrix")
    except SingularMatrixError as exc:
        raise NumericalError(f"internal inconsistency in QR representation: {exc}") from exc
