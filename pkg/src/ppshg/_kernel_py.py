"""Pure-NumPy batch integrator, the fallback for the compiled kernel.

Operates in place on the four complex state arrays of one batch of
trajectories, consuming a pre-drawn block of real noise so that the
compiled and pure paths see the same random stream.
"""

from __future__ import annotations

import numpy as np

COMPILED = False


def run_steps(
    alpha: np.ndarray,
    alpha_plus: np.ndarray,
    beta: np.ndarray,
    beta_plus: np.ndarray,
    noise: np.ndarray,
    kappa: float,
    dz: float,
    midpoint: bool,
    use_noise: bool,
    midpoint_iterations: int = 3,
) -> None:
    """Advance the batch by noise.shape[0] steps (in place).

    noise has shape (n_steps, 2, n_traj); rows are the eta1/eta2 draws.
    """
    sqdz = np.sqrt(dz)
    half = 0.5 * dz
    for s in range(noise.shape[0]):
        if midpoint:
            am, apm, bm, bpm = alpha, alpha_plus, beta, beta_plus
            for _ in range(midpoint_iterations):
                am, apm, bm, bpm = (
                    alpha + half * kappa * apm * bm,
                    alpha_plus + half * kappa * am * bpm,
                    beta - 0.5 * half * kappa * am * am,
                    beta_plus - 0.5 * half * kappa * apm * apm,
                )
        else:
            am, apm, bm, bpm = alpha, alpha_plus, beta, beta_plus
        new_alpha = alpha + dz * kappa * apm * bm
        new_alpha_plus = alpha_plus + dz * kappa * am * bpm
        if use_noise:
            new_alpha += np.sqrt(kappa * bm + 0j) * (noise[s, 0] * sqdz)
            new_alpha_plus += np.sqrt(kappa * bpm + 0j) * (noise[s, 1] * sqdz)
        beta -= 0.5 * dz * kappa * am * am
        beta_plus -= 0.5 * dz * kappa * apm * apm
        alpha[:] = new_alpha
        alpha_plus[:] = new_alpha_plus
