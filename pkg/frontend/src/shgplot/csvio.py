"""Reading and validating the simulator's CSV output schema."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

GRID_COLUMN = "zeta"


class SchemaMismatch(ValueError):
    """The CSV lacks a column the figure needs."""


class GridMismatch(ValueError):
    """Input files do not share the same interaction-length grid."""


@dataclass(frozen=True)
class Curve:
    """One labelled y(zeta) curve with its standard errors."""

    label: str
    zeta: np.ndarray
    value: np.ndarray
    se: np.ndarray


def _parse(cell: str) -> float:
    return math.nan if cell == "" else float(cell)


def read_column(path: str, column: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (zeta, value, se) arrays for one column of a results CSV."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(f"{path}: empty file") from None
        se_column = f"{column}_se"
        for name in (GRID_COLUMN, column, se_column):
            if name not in header:
                raise SchemaMismatch(f"{path}: no column {name!r}")
        gi = header.index(GRID_COLUMN)
        vi = header.index(column)
        si = header.index(se_column)
        rows = [(_parse(row[gi]), _parse(row[vi]), _parse(row[si]))
                for row in reader if row]
    if not rows:
        raise SchemaMismatch(f"{path}: no data rows")
    zeta, value, se = (np.array(col) for col in zip(*rows))
    return zeta, value, se


def load_curves(paths: list[str], labels: list[str], column: str) -> list[Curve]:
    """Load one column from each file; all files must share the zeta grid."""
    if not paths:
        raise ValueError("no input files given")
    if len(labels) != len(paths):
        raise ValueError(
            f"{len(paths)} input files but {len(labels)} labels"
        )
    curves = []
    for path, label in zip(paths, labels):
        zeta, value, se = read_column(path, column)
        curves.append(Curve(label, zeta, value, se))
    first = curves[0]
    for curve in curves[1:]:
        if len(curve.zeta) != len(first.zeta) or not np.array_equal(
            curve.zeta, first.zeta
        ):
            raise GridMismatch(
                f"{paths[0]} and {curve.label!r} input differ in zeta grid"
            )
    return curves
