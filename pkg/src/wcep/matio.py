"""Matrix Market and CSV matrix files.

CSV cells hold one entry each; complex entries are written ``re+imi``
(``1.5-2i``) with 17 significant digits.  Matrices with all-zero imaginary
parts are written as real.
"""

from __future__ import annotations

import csv
import io
import os
from typing import TextIO

import numpy as np
import scipy.io
import scipy.sparse

from .dense import as_matrix
from .errors import ValidationError

__all__ = [
    "read_matrix",
    "write_matrix",
    "read_mtx",
    "write_mtx",
    "read_csv",
    "write_csv",
    "format_entry",
    "parse_entry",
    "infer_format",
]

FORMATS = ("mtx", "csv")


def infer_format(path: str) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "mtx"


def _as_output(a) -> np.ndarray:
    a = np.asarray(a)
    if np.iscomplexobj(a) and not np.any(a.imag):
        return a.real.copy()
    return a


def read_mtx(source) -> np.ndarray:
    try:
        data = scipy.io.mmread(source)
    except (ValueError, OSError, IndexError) as exc:
        raise ValidationError(f"cannot parse Matrix Market data from {source!r}: {exc}") from exc
    if scipy.sparse.issparse(data):
        data = data.toarray()
    return as_matrix(data, str(source))


def write_mtx(target, a, layout: str = "array") -> None:
    if layout not in ("array", "coordinate"):
        raise ValidationError(f"Matrix Market layout must be 'array' or 'coordinate', got {layout!r}")
    out = _as_output(a)
    if layout == "coordinate":
        out = scipy.sparse.coo_matrix(out)
    scipy.io.mmwrite(target, out, symmetry="general")


def format_entry(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_entry(cell: str) -> complex:
    text = cell.strip().replace(" ", "")
    if not text:
        raise ValueError("empty cell")
    if text[-1] in "ij":
        text = text[:-1] + "j"
    return complex(text)


def read_csv(source: str | TextIO) -> np.ndarray:
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as fh:
            return read_csv(fh)
    rows = []
    for lineno, row in enumerate(csv.reader(source), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        try:
            rows.append([parse_entry(c) for c in row])
        except ValueError as exc:
            raise ValidationError(f"line {lineno}: cannot parse entry ({exc}) in {row!r}") from exc
    if not rows:
        raise ValidationError("CSV matrix is empty")
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValidationError(f"CSV row {i} has {len(row)} entries, expected {width}")
    return as_matrix(np.array(rows, dtype=complex), "CSV matrix")


def write_csv(target: str | TextIO, a) -> None:
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", newline="") as fh:
            write_csv(fh, a)
            return
    writer = csv.writer(target, lineterminator="\n")
    for row in np.atleast_2d(np.asarray(a)):
        writer.writerow([format_entry(z) for z in row])


def read_matrix(path: str, fmt: str | None = None) -> np.ndarray:
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise ValidationError(f"unknown matrix format {fmt!r}; choose from {FORMATS}")
    if not os.path.exists(path):
        raise ValidationError(f"matrix file not found: {path}")
    return read_csv(path) if fmt == "csv" else read_mtx(path)


def write_matrix(target, a, fmt: str = "mtx", layout: str = "array") -> None:
    """Write to a path or a text stream."""
    if fmt not in FORMATS:
        raise ValidationError(f"unknown matrix format {fmt!r}; choose from {FORMATS}")
    if fmt == "csv":
        write_csv(target, a)
        return
    if isinstance(target, (str, os.PathLike)):
        write_mtx(target, a, layout)
        return
    buf = io.BytesIO()
    write_mtx(buf, a, layout)
    target.write(buf.getvalue().decode("ascii"))
