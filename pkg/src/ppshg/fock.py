"""Truncated number-state oracle for small photon numbers.

Evolves the two-mode wavefunction exactly (up to truncation) under the
generator (kappa/2)(a^dag^2 b - a^2 b^dag), which conserves n_a + 2 n_b,
so the evolution is block-diagonal over that quantum number and each
block is propagated by a matrix exponential.  The derived observables
are exact operator expectations in the same report format as the
trajectory pipeline, making this an independent cross-check of the
stochastic results.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .observables import MONOMIALS, derive_scalars
from .states import PumpSpec

NORM_TOL = 1e-6
TAIL_TOL = 1e-6


class CutoffTooSmall(ValueError):
    pass


@dataclass
class FockState:
    """Two-mode wavefunction coefficients on |n_a, n_b> with n_a <=
    cutoff_a, n_b <= cutoff_b."""

    cutoff_a: int
    cutoff_b: int
    coeffs: np.ndarray  # shape (cutoff_a + 1, cutoff_b + 1), complex

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def boundary_population(self) -> float:
        c = self.coeffs
        return float(
            np.sum(np.abs(c[-1, :]) ** 2) + np.sum(np.abs(c[:, -1]) ** 2)
        )


def _lower(dim: int) -> np.ndarray:
    """Annihilation operator matrix on a dim-dimensional truncation."""
    return np.diag(np.sqrt(np.arange(1, dim)), k=1)


def prepare_input(
    spec: PumpSpec, cutoff_a: int = 40, cutoff_b: int = 20
) -> FockState:
    """Displaced squeezed pump (D(alpha0) S(eps) |0>) with harmonic vacuum.

    eps = r*exp(2i*phi); built from truncated matrix exponentials of the
    squeeze and displacement generators.
    """
    dim = cutoff_a + 1
    a = _lower(dim)
    ad = a.T.conj()
    eps = spec.r * np.exp(2j * spec.phi)
    squeeze = expm(0.5 * np.conj(eps) * (a @ a) - 0.5 * eps * (ad @ ad))
    displace = expm(spec.alpha0 * ad - np.conj(spec.alpha0) * a)
    pump = displace @ squeeze @ np.eye(dim, 1, dtype=complex).ravel()
    # the truncated-generator exponentials are unitary, so truncation shows
    # up as population piling into the top levels rather than norm loss
    tail = float(np.sum(np.abs(pump[-2:]) ** 2))
    if tail > TAIL_TOL:
        raise CutoffTooSmall(
            f"pump cutoff {cutoff_a} leaves tail population {tail:.2e} for {spec}"
        )
    norm = np.linalg.norm(pump)
    coeffs = np.zeros((dim, cutoff_b + 1), dtype=complex)
    coeffs[:, 0] = pump / norm
    return FockState(cutoff_a, cutoff_b, coeffs)


def _blocks(cutoff_a: int, cutoff_b: int):
    """Index lists of the conserved sectors m = n_a + 2*n_b."""
    blocks: dict[int, list[tuple[int, int]]] = {}
    for na in range(cutoff_a + 1):
        for nb in range(cutoff_b + 1):
            blocks.setdefault(na + 2 * nb, []).append((na, nb))
    return blocks


def evolve(state: FockState, kappa: float, z: float) -> FockState:
    """Propagate by length z under the conversion generator."""
    norm0 = state.norm
    if abs(norm0 - 1) > NORM_TOL:
        raise ValueError(f"input state not normalised (norm {norm0})")
    out = np.zeros_like(state.coeffs)
    for members in _blocks(state.cutoff_a, state.cutoff_b).values():
        n = len(members)
        vec = np.array([state.coeffs[na, nb] for na, nb in members])
        if n == 1:
            out[members[0]] = vec[0]
            continue
        g = np.zeros((n, n))
        index = {m: i for i, m in enumerate(members)}
        # (kappa/2) a^dag^2 b couples (na, nb) -> (na+2, nb-1)
        for (na, nb), i in index.items():
            if nb >= 1 and (na + 2, nb - 1) in index:
                elem = 0.5 * kappa * np.sqrt((na + 1) * (na + 2) * nb)
                j = index[(na + 2, nb - 1)]
                g[j, i] = elem
                g[i, j] = -elem
        vec = expm(g * z) @ vec
        for (na, nb), i in index.items():
            out[na, nb] = vec[i]
    evolved = FockState(state.cutoff_a, state.cutoff_b, out)
    if abs(evolved.norm - 1) > NORM_TOL:
        raise RuntimeError(f"norm drift {abs(evolved.norm - 1):.2e} during evolution")
    if evolved.boundary_population() > TAIL_TOL:
        warnings.warn(
            "population reaching the truncation boundary "
            f"({evolved.boundary_population():.2e}); increase cutoffs",
            stacklevel=2,
        )
    return evolved


def number_mean(state: FockState) -> tuple[float, float]:
    """(<n_a>, <n_b>)."""
    p = np.abs(state.coeffs) ** 2
    na = np.arange(state.cutoff_a + 1)
    nb = np.arange(state.cutoff_b + 1)
    return float((p.sum(axis=1) * na).sum()), float((p.sum(axis=0) * nb).sum())


def moment_vector(state: FockState) -> np.ndarray:
    """Exact normally-ordered expectations in MONOMIALS order."""
    c = state.coeffs
    a = _lower(state.cutoff_a + 1)
    b = _lower(state.cutoff_b + 1)
    a1 = a @ c
    a2 = a @ a1
    b1 = c @ b.T
    b2 = b1 @ b.T
    ab = a1 @ b.T

    def ev(x):
        return complex(np.vdot(c, x))

    m = {
        "a": ev(a1), "a2": ev(a2),
        "apa": complex(np.vdot(a1, a1)),
        "ap2a2": complex(np.vdot(a2, a2)),
        "b": ev(b1), "b2": ev(b2),
        "bpb": complex(np.vdot(b1, b1)),
        "bp2b2": complex(np.vdot(b2, b2)),
        "ab": ev(ab),
        "abp": complex(np.vdot(b1, a1)),  # <b^dag a>
    }
    m["ap"] = np.conj(m["a"])
    m["ap2"] = np.conj(m["a2"])
    m["bp"] = np.conj(m["b"])
    m["bp2"] = np.conj(m["b2"])
    m["apb"] = np.conj(m["abp"])
    m["apbp"] = np.conj(m["ab"])
    return np.array([m[name] for name in MONOMIALS])


def fock_observables(state: FockState) -> dict[str, float]:
    """Exact values of every reported scalar for this state."""
    scalars, _ = derive_scalars(moment_vector(state))
    return scalars
