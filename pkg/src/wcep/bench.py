"""Timing and accuracy comparison of the weighted core-EP representations."""

from __future__ import annotations

import io
import math
import os
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import genin, reps
from .dense import DEFAULT_TOL, Tolerance
from .errors import ValidationError, WcepError
from .genin import WeightedPair
from .instances import gen_random_pair
from .verify import residuals

__all__ = [
    "METHODS",
    "BenchConfig",
    "BenchRow",
    "compute",
    "parse_config",
    "load_config",
    "run_bench",
    "rows_to_csv",
    "rows_to_markdown",
]

# name -> (label, function(pair, l, tol))
METHODS: dict[str, tuple[str, Callable[[WeightedPair, int, Tolerance], np.ndarray]]] = {
    "eq13": ("(1.3)", lambda p, l, tol: genin.wcep_eq13(p, l, tol)),
    "eq28": ("(2.8)", lambda p, l, tol: genin.wcep_eq28(p, l, tol)),
    "eq29": ("(2.9)", lambda p, l, tol: genin.wcep_eq29(p, l, tol)),
    "def": ("A[(WA)^cep]^2", lambda p, l, tol: genin.wcep_def(p, tol)),
    "svd": ("SVD canonical", lambda p, l, tol: reps.wcep_svd_canonical(p, tol)),
    "fullrank": ("full-rank", lambda p, l, tol: reps.wcep_full_rank(p, tol)),
    "qr": ("QR", lambda p, l, tol: reps.wcep_qr(p, tol)),
}


def compute(p: WeightedPair, method: str, l: int | None = None, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Evaluate one named representation; ``l`` only affects eq13/eq28/eq29."""
    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}; choose from {sorted(METHODS)}")
    l = genin.resolve_exponent(p, l)
    return METHODS[method][1](p, l, tol)


@dataclass
class BenchConfig:
    sizes: list[tuple[int, int]] = field(default_factory=lambda: [(100, 200)])
    l_offsets: list[int] = field(default_factory=lambda: [0])
    target_index: int = 4
    seed: int = 0
    repetitions: int = 5
    methods: list[str] = field(default_factory=lambda: ["eq13", "eq28"])

    def __post_init__(self):
        if not self.sizes:
            raise ValidationError("sizes must not be empty")
        for m, n in self.sizes:
            if m < 1 or n < 1:
                raise ValidationError(f"sizes must be positive, got {m}x{n}")
        if any(o < 0 for o in self.l_offsets) or not self.l_offsets:
            raise ValidationError("l_offsets must be a non-empty list of non-negative integers")
        if self.target_index < 1:
            raise ValidationError("target_index must be at least 1")
        if self.repetitions < 1:
            raise ValidationError("repetitions must be at least 1")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown or not self.methods:
            raise ValidationError(f"unknown methods {unknown}; choose from {sorted(METHODS)}")


@dataclass
class BenchRow:
    method: str
    m: int
    n: int
    k: int
    l: int
    seconds: float
    r1: float
    r2: float
    r3: float
    r1_rel: float
    r2_rel: float
    r3_rel: float
    passed: bool
    status: str = "ok"

    @property
    def label(self) -> str:
        return METHODS[self.method][0]


def _int_list(value: str) -> list[int]:
    return [int(v) for v in value.replace(",", " ").split()]


def _sizes(value: str) -> list[tuple[int, int]]:
    out = []
    for item in value.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.lower().replace("x", " ").split()
        if len(parts) != 2:
            raise ValidationError(f"size {item!r} must look like MxN")
        out.append((int(parts[0]), int(parts[1])))
    return out


_PARSERS: dict[str, Callable[[str], object]] = {
    "sizes": _sizes,
    "l_offsets": _int_list,
    "target_index": int,
    "seed": int,
    "repetitions": int,
    "methods": lambda v: [s.strip() for s in v.replace(",", " ").split()],
}


def parse_config(text: str, env: dict[str, str] | None = None) -> BenchConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    ``WCEP_SEED`` in ``env`` (default: the process environment) overrides
    the seed.
    """
    env = os.environ if env is None else env
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"config line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _PARSERS:
            raise ValidationError(f"config line {lineno}: unknown key {key!r}; known: {sorted(_PARSERS)}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ValidationError(f"config line {lineno}: bad value for {key}: {exc}") from exc
    if env.get("WCEP_SEED"):
        try:
            values["seed"] = int(env["WCEP_SEED"])
        except ValueError as exc:
            raise ValidationError(f"WCEP_SEED must be an integer, got {env['WCEP_SEED']!r}") from exc
    return BenchConfig(**values)


def load_config(path: str, env: dict[str, str] | None = None) -> BenchConfig:
    if not os.path.exists(path):
        raise ValidationError(f"config file not found: {path}")
    with open(path) as fh:
        return parse_config(fh.read(), env)


def _time_method(fn, p, l, tol, repetitions):
    times = []
    x = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        x = fn(p, l, tol)
        times.append(time.perf_counter() - t0)
    return x, statistics.median(times)


def run_bench(cfg: BenchConfig, tol: Tolerance = DEFAULT_TOL) -> list[BenchRow]:
    """Rows ordered by size, then l offset, then method (as configured).

    Each size uses one pair generated from the configured seed.  A method
    that raises produces a row with NaN residuals and a ``failed`` status.
    """
    rows = []
    for m, n in cfg.sizes:
        p = gen_random_pair(m, n, cfg.target_index, cfg.seed, tol=tol)
        for offset in cfg.l_offsets:
            l = p.k + offset
            for method in cfg.methods:
                fn = METHODS[method][1]
                try:
                    x, secs = _time_method(fn, p, l, tol, cfg.repetitions)
                    rep = residuals(p, x, tol)
                except WcepError as exc:
                    nan = math.nan
                    rows.append(BenchRow(method, m, n, p.k, l, nan, nan, nan, nan, nan, nan, nan,
                                         False, f"failed: {exc}"))
                    continue
                rows.append(BenchRow(method, m, n, p.k, l, secs, rep.r1, rep.r2, rep.r3,
                                     rep.r1_rel, rep.r2_rel, rep.r3_rel, rep.passed))
    return rows


CSV_COLUMNS = ("method", "m", "n", "k", "l", "seconds", "r1", "r2", "r3",
               "r1_rel", "r2_rel", "r3_rel", "pass", "status")


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.4e}"


def rows_to_csv(rows: list[BenchRow]) -> str:
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for r in rows:
        fields = [r.method, str(r.m), str(r.n), str(r.k), str(r.l), f"{r.seconds:.6f}",
                  _fmt(r.r1), _fmt(r.r2), _fmt(r.r3), _fmt(r.r1_rel), _fmt(r.r2_rel),
                  _fmt(r.r3_rel), "yes" if r.passed else "no", r.status.replace(",", ";")]
        out.write(",".join(fields) + "\n")
    return out.getvalue()


def rows_to_markdown(rows: list[BenchRow]) -> str:
    header = ["Equation", "Size m,n", "l", "CPU Time", "r1", "r2", "r3",
              "r1 rel", "r2 rel", "r3 rel", "pass"]
    body = []
    for r in rows:
        off = r.l - r.k
        lcol = f"l=k={r.l}" if off == 0 else f"l=k+{off}={r.l}"
        body.append([r.label, f"{r.m}, {r.n}", lcol, f"{r.seconds:.4f}", _fmt(r.r1), _fmt(r.r2),
                     _fmt(r.r3), _fmt(r.r1_rel), _fmt(r.r2_rel), _fmt(r.r3_rel),
                     "yes" if r.passed else r.status])
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |",
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines += ["| " + " | ".join(c.ljust(w) for c, w in zip(b, widths)) + " |" for b in body]
    return "\n".join(lines) + "\n"
