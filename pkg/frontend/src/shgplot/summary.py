"""Numeric summaries extracted from the CSV (not from rendered images)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .csvio import read_column


@dataclass(frozen=True)
class CurveMinimum:
    """Grid minimum of one curve: where it is, its value and standard error."""

    zeta: float
    value: float
    se: float


def curve_minimum(path: str, column: str) -> CurveMinimum:
    """Minimum of the column over the recorded grid (no interpolation)."""
    zeta, value, se = read_column(path, column)
    finite = np.isfinite(value)
    if not finite.any():
        raise ValueError(f"{path}: column {column!r} has no finite values")
    k = int(np.flatnonzero(finite)[np.argmin(value[finite])])
    return CurveMinimum(float(zeta[k]), float(value[k]), float(se[k]))


def reference_crossings(path: str, column: str, reference: float) -> list[float]:
    """Zeta values where the curve crosses the reference, by linear
    interpolation between adjacent grid points."""
    zeta, value, _ = read_column(path, column)
    d = value - reference
    out = []
    for k in range(len(d) - 1):
        a, b = d[k], d[k + 1]
        if not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a == 0.0:
            out.append(float(zeta[k]))
        elif a * b < 0:
            out.append(float(zeta[k] + (zeta[k + 1] - zeta[k]) * a / (a - b)))
    if len(d) and d[-1] == 0.0:
        out.append(float(zeta[-1]))
    return out
