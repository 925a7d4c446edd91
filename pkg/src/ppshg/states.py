"""Input-state preparation in the doubled phase space.

The pump mode starts in a coherent or quadrature-squeezed state; the
harmonic mode always starts in vacuum.  Squeezed ensembles are generated
by a moment-matched Gaussian construction in the doubled phase space:

    delta_alpha      = lam1*n1 + 1j*lam2*n2
    delta_alpha_plus = lam1*n1 - 1j*lam2*n2

with n1, n2 independent standard real Gaussians.  The lambdas are chosen
so the ensemble reproduces the normally-ordered second moments of the
squeezed state; one of them comes out purely imaginary, which is fine
because alpha and alpha_plus are independent complex variables.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

PHI_X = 0.0
PHI_Y = math.pi / 2

_ALLOWED_PHI = (PHI_X, PHI_Y)


@dataclass(frozen=True)
class PumpSpec:
    """Coherent amplitude plus squeezing of the input pump field."""

    alpha0: complex
    r: float = 0.0
    phi: float = PHI_X

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"squeezing parameter must be >= 0, got {self.r}")
        if self.r > 0 and not any(
            math.isclose(self.phi, p, abs_tol=1e-12) for p in _ALLOWED_PHI
        ):
            raise ValueError(
                f"squeeze angle must be 0 (X) or pi/2 (Y), got {self.phi}"
            )

    @property
    def mean_photon_number(self) -> float:
        return abs(self.alpha0) ** 2 + math.sinh(self.r) ** 2

    @property
    def x_squeezed(self) -> bool:
        return math.isclose(self.phi, PHI_X, abs_tol=1e-12)


@dataclass
class PhasePoint:
    """One trajectory's four independent phase-space variables.

    alpha_plus is the conjugate of alpha only on ensemble average,
    never pointwise; same for the harmonic pair.
    """

    alpha: complex
    alpha_plus: complex
    beta: complex
    beta_plus: complex


@dataclass(frozen=True)
class InputMoments:
    """Analytic moments of the input pump state."""

    N: float
    VX: float
    VY: float
    VN: float
    g2: float | None


@dataclass(frozen=True)
class Ensemble:
    """Struct-of-arrays layout for a batch of phase points."""

    alpha: np.ndarray
    alpha_plus: np.ndarray
    beta: np.ndarray
    beta_plus: np.ndarray

    def __len__(self):
        return self.alpha.shape[0]

    def point(self, i: int) -> PhasePoint:
        return PhasePoint(
            self.alpha[i], self.alpha_plus[i], self.beta[i], self.beta_plus[i]
        )


def sample_coherent(alpha0: complex, count: int) -> Ensemble:
    """Coherent pump: a point distribution at (alpha0, conj(alpha0))."""
    if count < 1:
        raise ValueError("count must be >= 1")
    shape = (count,)
    return Ensemble(
        alpha=np.full(shape, alpha0, dtype=np.complex128),
        alpha_plus=np.full(shape, np.conj(alpha0), dtype=np.complex128),
        beta=np.zeros(shape, dtype=np.complex128),
        beta_plus=np.zeros(shape, dtype=np.complex128),
    )


def squeezed_lambdas(r: float, phi: float) -> tuple[complex, complex]:
    """Gaussian weights (lam1, lam2) of the doubled-phase-space sampler.

    Matching mean(da*da+) = sinh^2 r and mean(da*da) = -+sinh r cosh r
    gives lam1^2 + lam2^2 = sinh^2 r and lam1^2 - lam2^2 = -+sinh r cosh r,
    so one weight squared is negative and the weight itself imaginary.
    """
    sh = math.sinh(r)
    if math.isclose(phi, PHI_X, abs_tol=1e-12):
        lam1sq = -sh * math.exp(-r) / 2.0
        lam2sq = sh * math.exp(r) / 2.0
    elif math.isclose(phi, PHI_Y, abs_tol=1e-12):
        lam1sq = sh * math.exp(r) / 2.0
        lam2sq = -sh * math.exp(-r) / 2.0
    else:
        raise ValueError(f"squeeze angle must be 0 or pi/2, got {phi}")
    return cmath.sqrt(lam1sq), cmath.sqrt(lam2sq)


def sample_squeezed(spec: PumpSpec, count: int, rng: np.random.Generator) -> Ensemble:
    """Sample a squeezed pump ensemble; harmonic mode in vacuum.

    Degenerates to sample_coherent when r = 0 (no draws consumed).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if spec.r == 0.0:
        return sample_coherent(spec.alpha0, count)
    lam1, lam2 = squeezed_lambdas(spec.r, spec.phi)
    n = rng.standard_normal((2, count))
    da = lam1 * n[0] + 1j * lam2 * n[1]
    dap = lam1 * n[0] - 1j * lam2 * n[1]
    return Ensemble(
        alpha=spec.alpha0 + da,
        alpha_plus=np.conj(spec.alpha0) + dap,
        beta=np.zeros(count, dtype=np.complex128),
        beta_plus=np.zeros(count, dtype=np.complex128),
    )


def input_moments(spec: PumpSpec) -> InputMoments:
    """Analytic photon number, quadrature variances, number variance, g2."""
    r = spec.r
    a2 = abs(spec.alpha0) ** 2
    sh, ch = math.sinh(r), math.cosh(r)
    N = a2 + sh * sh
    if spec.x_squeezed:
        VX, VY = math.exp(-2 * r), math.exp(2 * r)
        VN = a2 * math.exp(-2 * r) + 2 * sh * sh * ch * ch
    else:
        VX, VY = math.exp(2 * r), math.exp(-2 * r)
        VN = a2 * math.exp(2 * r) + 2 * sh * sh * ch * ch
    g2 = 1.0 + (VN - N) / N**2 if N > 0 else None
    return InputMoments(N=N, VX=VX, VY=VY, VN=VN, g2=g2)
