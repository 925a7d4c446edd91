"""Single-trajectory integration of the four coupled phase-space SDEs.

    d(alpha)/dz      = kappa*alpha_plus*beta      + sqrt(kappa*beta)*eta1
    d(alpha_plus)/dz = kappa*alpha*beta_plus      + sqrt(kappa*beta_plus)*eta2
    d(beta)/dz       = -kappa/2 * alpha^2
    d(beta_plus)/dz  = -kappa/2 * alpha_plus^2

eta1, eta2 are independent real white-noise terms; the harmonic pair is
noiseless.  Because the diffusion coefficients depend only on the
noiseless beta variables, the Ito and Stratonovich forms coincide and
the semi-implicit midpoint scheme may be applied to the equations as
written.

This module is the scalar reference path, used directly in tests and as
the ground truth for the vectorised batch kernel in `ppshg.kernel`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .states import PhasePoint

OVERFLOW_GUARD = 1e12
MIDPOINT_ITERATIONS = 3

SCHEMES = ("euler", "midpoint")


class TrajectoryDivergence(RuntimeError):
    """A trajectory left the overflow guard or became non-finite."""


@dataclass(frozen=True)
class SdeConfig:
    kappa: float
    z_max: float
    n_steps: int
    scheme: str = "midpoint"
    record_stride: int = 1

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be > 0")
        if self.z_max <= 0:
            raise ValueError("z_max must be > 0")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")
        if self.record_stride < 1 or self.n_steps % self.record_stride != 0:
            raise ValueError("record_stride must divide n_steps")

    @property
    def dz(self) -> float:
        return self.z_max / self.n_steps


def zeta_scale(kappa: float, alpha0: complex, r: float = 0.0) -> float:
    """zeta = scale * z with scale = kappa*sqrt((|alpha0|^2 + sinh^2 r)/2)."""
    return kappa * math.sqrt((abs(alpha0) ** 2 + math.sinh(r) ** 2) / 2.0)


def drift(p: PhasePoint, kappa: float) -> PhasePoint:
    """Deterministic part of the equations of motion."""
    return PhasePoint(
        alpha=kappa * p.alpha_plus * p.beta,
        alpha_plus=kappa * p.alpha * p.beta_plus,
        beta=-0.5 * kappa * p.alpha * p.alpha,
        beta_plus=-0.5 * kappa * p.alpha_plus * p.alpha_plus,
    )


def noise_increment(
    p: PhasePoint, kappa: float, dz: float, rng: np.random.Generator
) -> PhasePoint:
    """Stochastic increment over dz; only the fundamental pair is noisy.

    The complex square root uses the principal branch; since the etas are
    sign-symmetric any fixed branch gives the same increment law.
    """
    eta1, eta2 = rng.standard_normal(2)
    sq = math.sqrt(dz)
    return PhasePoint(
        alpha=cmath.sqrt(kappa * p.beta) * eta1 * sq,
        alpha_plus=cmath.sqrt(kappa * p.beta_plus) * eta2 * sq,
        beta=0.0,
        beta_plus=0.0,
    )


def _check_finite(p: PhasePoint):
    for v in (p.alpha, p.alpha_plus, p.beta, p.beta_plus):
        if not (cmath.isfinite(v) and abs(v) < OVERFLOW_GUARD):
            raise TrajectoryDivergence(f"phase-space variable diverged: {p}")


def step(
    p: PhasePoint,
    cfg: SdeConfig,
    rng: np.random.Generator | None,
    eta: tuple[float, float] | None = None,
) -> PhasePoint:
    """One integration step; pass rng=None (or eta=(0,0)) for noise-free.

    euler: drift and diffusion evaluated at the step start.
    midpoint: the drift midpoint is found by fixed-point iteration and
    the same noise realisation enters through the midpoint beta values.
    """
    dz = cfg.dz
    if eta is None:
        eta = tuple(rng.standard_normal(2)) if rng is not None else (0.0, 0.0)
    if cfg.scheme == "euler":
        mid = p
    else:
        mid = p
        for _ in range(MIDPOINT_ITERATIONS):
            d = drift(mid, cfg.kappa)
            mid = PhasePoint(
                alpha=p.alpha + 0.5 * dz * d.alpha,
                alpha_plus=p.alpha_plus + 0.5 * dz * d.alpha_plus,
                beta=p.beta + 0.5 * dz * d.beta,
                beta_plus=p.beta_plus + 0.5 * dz * d.beta_plus,
            )
    d = drift(mid, cfg.kappa)
    sq = math.sqrt(dz)
    out = PhasePoint(
        alpha=p.alpha + dz * d.alpha + cmath.sqrt(cfg.kappa * mid.beta) * eta[0] * sq,
        alpha_plus=p.alpha_plus
        + dz * d.alpha_plus
        + cmath.sqrt(cfg.kappa * mid.beta_plus) * eta[1] * sq,
        beta=p.beta + dz * d.beta,
        beta_plus=p.beta_plus + dz * d.beta_plus,
    )
    _check_finite(out)
    return out


def integrate_trajectory(
    p0: PhasePoint,
    cfg: SdeConfig,
    rng: np.random.Generator | None,
    observer: Callable[[float, PhasePoint], None] | None = None,
    trajectory_index: int | None = None,
) -> PhasePoint:
    """Integrate one trajectory, invoking observer at every recorded z.

    The recorded grid (z = 0, stride*dz, ..., z_max) is identical for
    every trajectory.
    """
    p = p0
    if observer is not None:
        observer(0.0, p)
    for k in range(1, cfg.n_steps + 1):
        try:
            p = step(p, cfg, rng)
        except TrajectoryDivergence as exc:
            idx = "?" if trajectory_index is None else trajectory_index
            raise TrajectoryDivergence(
                f"trajectory {idx} diverged at z={k * cfg.dz:g}: {exc}"
            ) from exc
        if observer is not None and k % cfg.record_stride == 0:
            observer(k * cfg.dz, p)
    return p


def classical_solution(alpha0: float, zeta: float) -> tuple[float, float]:
    """Noise-free closed form for an initially empty harmonic.

    alpha(zeta) = alpha0*sech(zeta), beta(zeta) = -(alpha0/sqrt(2))*tanh(zeta),
    with zeta = kappa*z*alpha0/sqrt(2).  Checks out by substitution into
    the noiseless equations of motion.
    """
    if alpha0 <= 0:
        raise ValueError("alpha0 must be > 0")
    return (
        alpha0 / math.cosh(zeta),
        -(alpha0 / math.sqrt(2.0)) * math.tanh(zeta),
    )
