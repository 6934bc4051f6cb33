"""Canonical text format for small dense matrices.

A document is JSON with ``dim`` and ``rows``; numbers are written with 17
significant digits so every binary64 value round-trips exactly::

    {
      "dim": 2,
      "rows": [
        [1, 0.10000000000000001],
        [0.10000000000000001, 2]
      ]
    }
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import InputError

__all__ = ["dumps_matrix", "format_float", "loads_matrix", "read_matrix", "write_matrix"]


def format_float(x: float) -> str:
    """17-significant-digit JSON number; non-finite values become ``null``."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps_matrix(m) -> str:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    rows = ",\n".join("    [" + ", ".join(format_float(v) for v in row) + "]" for row in m)
    return f'{{\n  "dim": {m.shape[0]},\n  "rows": [\n{rows}\n  ]\n}}\n'


def loads_matrix(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not a matrix document: {exc}") from None
    if not isinstance(doc, dict) or "dim" not in doc or "rows" not in doc:
        raise InputError("matrix document needs 'dim' and 'rows'")
    dim, rows = doc["dim"], doc["rows"]
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"bad dim {dim!r}")
    if not isinstance(rows, list) or len(rows) != dim or any(
        not isinstance(r, list) or len(r) != dim for r in rows
    ):
        raise InputError(f"rows must be {dim} lists of {dim} numbers")
    try:
        return np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise InputError("rows must contain numbers only") from None


def read_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads_matrix(text)


def write_matrix(path, m) -> None:
    Path(path).write_text(dumps_matrix(m))
