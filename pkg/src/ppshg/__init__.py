"""Positive-P trajectory-ensemble simulator for travelling-wave second
harmonic generation with coherent or squeezed pumps."""

__version__ = "0.1.0"

from .states import PumpSpec, PhasePoint, Ensemble, InputMoments  # noqa: E402
from .states import sample_coherent, sample_squeezed, input_moments  # noqa: E402
from .engine import SdeConfig, classical_solution, zeta_scale  # noqa: E402
from .observables import CorrelationReport, MomentAccumulator  # noqa: E402

__all__ = [
    "PumpSpec", "PhasePoint", "Ensemble", "InputMoments",
    "sample_coherent", "sample_squeezed", "input_moments",
    "SdeConfig", "classical_solution", "zeta_scale",
    "CorrelationReport", "MomentAccumulator",
    "__version__",
]
