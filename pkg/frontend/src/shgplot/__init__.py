"""Static figures and numeric summaries for SHG trajectory-ensemble CSVs."""

from .csvio import Curve, GridMismatch, SchemaMismatch, load_curves, read_column
from .figures import FIGURES, FigureSpec, render
from .summary import CurveMinimum, curve_minimum, reference_crossings

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "CurveMinimum",
    "FIGURES",
    "FigureSpec",
    "GridMismatch",
    "SchemaMismatch",
    "curve_minimum",
    "load_curves",
    "read_column",
    "reference_crossings",
    "render",
    "__version__",
]
