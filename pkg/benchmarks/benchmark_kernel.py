"""Compare the compiled SDE kernel against the pure-NumPy fallback.

Usage: python benchmarks/benchmark_kernel.py [--trajectories N] [--steps N]
Reports trajectory-steps per second for each backend and the speedup.
"""

import argparse
import importlib
import time

import numpy as np

from ppshg import _kernel_py
from ppshg.states import PumpSpec, sample_squeezed


def _load_compiled():
    try:
        mod = importlib.import_module("ppshg._kernel")
    except ImportError:
        return None
    return mod


def bench(run_steps, n_traj, n_steps, repeats=3):
    rng = np.random.Generator(np.random.Philox(key=(0, 0)))
    best = float("inf")
    for _ in range(repeats):
        ens = sample_squeezed(PumpSpec(100.0 + 0j), n_traj, rng)
        noise = rng.standard_normal((n_steps, 2, n_traj))
        t0 = time.perf_counter()
        run_steps(
            ens.alpha, ens.alpha_plus, ens.beta, ens.beta_plus,
            noise, 1e-2, 1e-3, True, True,
        )
        best = min(best, time.perf_counter() - t0)
    return n_traj * n_steps / best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trajectories", type=int, default=20_000)
    parser.add_argument("--steps", type=int, default=500)
    args = parser.parse_args()

    pure = bench(_kernel_py.run_steps, args.trajectories, args.steps)
    print(f"pure-python: {pure / 1e6:8.2f} M trajectory-steps/s")

    compiled = _load_compiled()
    if compiled is None:
        print("compiled:    not available (extension not built)")
        return
    fast = bench(compiled.run_steps, args.trajectories, args.steps)
    print(f"compiled:    {fast / 1e6:8.2f} M trajectory-steps/s")
    print(f"speedup:     {fast / pure:8.2f}x")


if __name__ == "__main__":
    main()
