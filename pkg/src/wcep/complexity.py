"""Flop-count model for the pseudoinverse-only representations.

Each ``cost_*`` function returns one term per intermediate product, in the
order the representation evaluates them.  Products are counted as
``rows * inner * cols``; a power ``M^l`` of a d x d matrix by repeated
squaring is counted as ``d^3 log2(l)`` with ``log2`` of values <= 1 taken as
zero.  The cost of a pseudoinverse is delegated to a :class:`PinvCostModel`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import ValidationError

__all__ = [
    "PinvCostModel",
    "CostTerm",
    "CostBreakdown",
    "Recommendation",
    "log2_cost",
    "cost_eq13",
    "cost_eq28",
    "cost_eq29",
    "recommend",
]

MODEL_KINDS = ("lower_bound", "svd_based", "custom")


@dataclass(frozen=True)
class PinvCostModel:
    """Flop count of a pseudoinverse of a ``rows x cols`` matrix.

    ``lower_bound`` charges ``max * min**2`` (so a d x d pseudoinverse costs
    ``d**3``); ``svd_based`` charges ``coefficient * min**2 * max``;
    ``custom`` calls ``func(rows, cols)``.
    """

    kind: str = "lower_bound"
    coefficient: float = 21.0
    func: Callable[[int, int], float] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValidationError(f"unknown pinv cost model {self.kind!r}; choose from {MODEL_KINDS}")
        if self.coefficient <= 0:
            raise ValidationError("coefficient must be positive")
        if self.kind == "custom" and self.func is None:
            raise ValidationError("custom pinv cost model needs a function")

    def __call__(self, rows: int, cols: int) -> float:
        lo, hi = min(rows, cols), max(rows, cols)
        if self.kind == "lower_bound":
            cost = float(hi * lo * lo)
        elif self.kind == "svd_based":
            cost = self.coefficient * lo * lo * hi
        else:
            cost = float(self.func(rows, cols))
        if rows > 0 and cols > 0 and cost <= 0:
            raise ValidationError(f"pinv cost must be positive, got {cost} for {rows}x{cols}")
        return cost


@dataclass(frozen=True)
class CostTerm:
    label: str
    formula: str
    flops: float
    is_pinv: bool = False


@dataclass(frozen=True)
class CostBreakdown:
    method: str
    m: int
    n: int
    l: int
    terms: tuple[CostTerm, ...]

    @property
    def total(self) -> float:
        return sum(t.flops for t in self.terms)

    @property
    def non_pinv(self) -> float:
        return sum(t.flops for t in self.terms if not t.is_pinv)

    @property
    def pinv_part(self) -> float:
        return sum(t.flops for t in self.terms if t.is_pinv)


@dataclass(frozen=True)
class Recommendation:
    choice: str
    costs: dict[str, float]


def log2_cost(x: float) -> float:
    return math.log2(x) if x > 1 else 0.0


def _check(m: int, n: int, l: int, min_l: int = 1) -> None:
    if m < 1 or n < 1:
        raise ValidationError(f"dimensions must be positive, got m={m}, n={n}")
    if l < min_l:
        raise ValidationError(f"l must be at least {min_l}, got {l}")


def cost_eq28(m: int, n: int, l: int, model: PinvCostModel = PinvCostModel()) -> CostBreakdown:
    """Terms of ``(AW)^l [W (AW)^(l+1)]^+``."""
    _check(m, n, l)
    terms = (
        CostTerm("AW", "m*n*m", float(m * n * m)),
        CostTerm("L1 = (AW)^l", "m^3 log l", m**3 * log2_cost(l)),
        CostTerm("L2 = (AW)^(l+1) = L1 (AW)", "m^3", float(m**3)),
        CostTerm("L3 = W (AW)^(l+1) = W L2", "n*m*m", float(n * m * m)),
        CostTerm("L4 = L3^+", "pinv(n,m)", model(n, m), is_pinv=True),
        CostTerm("X = L1 L4", "m*m*n", float(m * m * n)),
    )
    return CostBreakdown("eq28", m, n, l, terms)


def cost_eq29(m: int, n: int, l: int, model: PinvCostModel = PinvCostModel()) -> CostBreakdown:
    """Terms of ``A (WA)^l [(WA)^(l+2)]^+``.

    The power ``(WA)^l`` is charged ``n^3 log(l-1)``, reusing ``(WA)^2``.
    """
    _check(m, n, l)
    terms = (
        CostTerm("WA", "n*m*n", float(n * m * n)),
        CostTerm("(WA)^2", "n^3", float(n**3)),
        CostTerm("L1 = (WA)^l", "n^3 log(l-1)", n**3 * log2_cost(l - 1)),
        CostTerm("L2 = (WA)^(l+2) = L1 (WA)^2", "n^3", float(n**3)),
        CostTerm("L3 = L2^+", "pinv(n)", model(n, n), is_pinv=True),
        CostTerm("X = A L1 L3", "2*m*n*n", float(2 * m * n * n)),
    )
    return CostBreakdown("eq29", m, n, l, terms)


def cost_eq13(m: int, n: int, l: int, model: PinvCostModel = PinvCostModel()) -> CostBreakdown:
    """Terms of ``[W (AW)^(l+1) ((AW)^l)^+]^+``."""
    _check(m, n, l)
    terms = (
        CostTerm("AW", "m*n*m", float(m * n * m)),
        CostTerm("L1 = (AW)^l", "m^3 log l", m**3 * log2_cost(l)),
        CostTerm("L2 = (AW)^(l+1) = L1 (AW)", "m^3", float(m**3)),
        CostTerm("L3 = L1^+", "pinv(m)", model(m, m), is_pinv=True),
        CostTerm("L4 = W L2 L3", "2*n*m*m", float(2 * n * m * m)),
        CostTerm("X = L4^+", "pinv(n,m)", model(n, m), is_pinv=True),
    )
    return CostBreakdown("eq13", m, n, l, terms)


def recommend(m: int, n: int, l: int, model: PinvCostModel = PinvCostModel()) -> Recommendation:
    """``eq28`` (powers of AW) when ``m < n``, else ``eq29`` (powers of WA)."""
    costs = {
        "eq28": cost_eq28(m, n, l, model).total,
        "eq29": cost_eq29(m, n, l, model).total,
    }
    return Recommendation("eq28" if m < n else "eq29", costs)
