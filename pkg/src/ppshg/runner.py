"""Ensemble orchestration and machine-readable output.

Trajectories are partitioned into batches; each batch draws from its own
counter-based (Philox) stream keyed by (master_seed, batch_index), so
the ensemble is bit-identical for any worker count.  Worker results are
merged in batch order, giving byte-identical CSV output regardless of
scheduling.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import __version__, kernel
from .engine import OVERFLOW_GUARD, SCHEMES, TrajectoryDivergence, zeta_scale
from .observables import SCALARS, CorrelationReport, MomentAccumulator, report_at
from .states import Ensemble, PumpSpec, sample_squeezed

CSV_COLUMNS = (
    ["zeta"]
    + [col for name in SCALARS for col in (name, f"{name}_se")]
    + ["im_residual_max"]
)
CSV_HEADER = ",".join(CSV_COLUMNS)

RECORD_EVERY_DEFAULT = 0.05
D_ZETA_DEFAULT = 1e-3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    pump: PumpSpec
    kappa: float = 1e-2
    zeta_max: float = 6.0
    d_zeta: float = D_ZETA_DEFAULT
    record_every: float = RECORD_EVERY_DEFAULT
    trajectories: int = 200_000
    batches: int = 100
    scheme: str = "midpoint"
    master_seed: int = 0
    workers: int = 1
    output_path: str | None = None
    deterministic: bool = False

    def __post_init__(self):
        if self.kappa <= 0:
            raise ConfigError("kappa must be > 0")
        if self.zeta_max < 0:
            raise ConfigError("zeta_max must be >= 0")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}")
        if self.trajectories < 2:
            raise ConfigError("need at least 2 trajectories")
        if self.batches < 1 or self.trajectories % self.batches != 0:
            raise ConfigError("trajectories must be divisible by batches")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.zeta_max > 0:
            steps = self.zeta_max / self.d_zeta
            if abs(steps - round(steps)) > 1e-9:
                raise ConfigError("zeta_max / d_zeta must be an integer")
            stride = self.record_every / self.d_zeta
            if abs(stride - round(stride)) > 1e-9 or round(stride) < 1:
                raise ConfigError("record_every / d_zeta must be a positive integer")
            points = self.zeta_max / self.record_every
            if abs(points - round(points)) > 1e-9:
                raise ConfigError("zeta_max / record_every must be an integer")

    @property
    def zeta_grid(self) -> np.ndarray:
        n_rec = round(self.zeta_max / self.record_every) if self.zeta_max > 0 else 0
        return np.arange(n_rec + 1) * self.record_every

    @property
    def steps_per_record(self) -> int:
        return round(self.record_every / self.d_zeta)

    @property
    def scale(self) -> float:
        """ζ per unit z for this pump."""
        return zeta_scale(self.kappa, self.pump.alpha0, self.pump.r)


def _check_batch(ens: Ensemble, batch_index: int, zeta: float):
    for arr in (ens.alpha, ens.alpha_plus, ens.beta, ens.beta_plus):
        if not np.all(np.isfinite(arr)) or np.abs(arr).max() >= OVERFLOW_GUARD:
            bad = int(np.argmax(~np.isfinite(arr) | (np.abs(arr) >= OVERFLOW_GUARD)))
            raise TrajectoryDivergence(
                f"trajectory {bad} of batch {batch_index} diverged "
                f"near zeta={zeta:g}"
            )


def _batch_task(config: SimConfig, batch_index: int):
    """Integrate one batch; returns (sums, counts) for its grid column."""
    bs = config.trajectories // config.batches
    rng = np.random.Generator(
        np.random.Philox(key=(config.master_seed, batch_index))
    )
    ens = sample_squeezed(config.pump, bs, rng)
    acc = MomentAccumulator(len(config.zeta_grid), 1)
    acc.accumulate_batch(ens, 0, 0)

    n_rec = len(config.zeta_grid) - 1
    if n_rec:
        stride = config.steps_per_record
        dz = config.d_zeta / config.scale
        midpoint = config.scheme == "midpoint"
        zeros = None
        for gi in range(1, n_rec + 1):
            if config.deterministic:
                if zeros is None:
                    zeros = np.zeros((stride, 2, bs))
                noise = zeros
            else:
                noise = rng.standard_normal((stride, 2, bs))
            kernel.run_steps(
                ens.alpha, ens.alpha_plus, ens.beta, ens.beta_plus,
                noise, config.kappa, dz, midpoint, not config.deterministic,
            )
            _check_batch(ens, batch_index, config.zeta_grid[gi])
            acc.accumulate_batch(ens, gi, 0)
    return acc.sums[:, 0, :], acc.counts[:, 0]


def run_accumulator(config: SimConfig) -> MomentAccumulator:
    """Integrate the whole ensemble; merged deterministically over batches."""
    acc = MomentAccumulator(len(config.zeta_grid), config.batches)
    if config.workers == 1:
        results = (_batch_task(config, bi) for bi in range(config.batches))
        for bi, (sums, counts) in enumerate(results):
            acc.sums[:, bi, :] = sums
            acc.counts[:, bi] = counts
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [
                pool.submit(_batch_task, config, bi) for bi in range(config.batches)
            ]
            for bi, fut in enumerate(futures):
                sums, counts = fut.result()
                acc.sums[:, bi, :] = sums
                acc.counts[:, bi] = counts
    return acc


def reports_from_accumulator(
    config: SimConfig, acc: MomentAccumulator
) -> list[CorrelationReport]:
    return [
        report_at(acc, gi, float(z)) for gi, z in enumerate(config.zeta_grid)
    ]


def _fmt(v: float) -> str:
    return "" if v is None or math.isnan(v) else format(v, ".12g")


def write_csv(path: str, reports: list[CorrelationReport]):
    lines = [CSV_HEADER]
    for rep in reports:
        row = [_fmt(rep.zeta)]
        for name in SCALARS:
            row.append(_fmt(rep.value(name)))
            row.append(_fmt(rep.se[name]))
        row.append(_fmt(rep.im_residual_max))
        lines.append(",".join(row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _config_record(config: SimConfig) -> dict:
    return {
        "alpha0": [config.pump.alpha0.real, config.pump.alpha0.imag],
        "squeeze_r": config.pump.r,
        "squeeze_quad": "x" if config.pump.x_squeezed else "y",
        "kappa": config.kappa,
        "zeta_max": config.zeta_max,
        "d_zeta": config.d_zeta,
        "record_every": config.record_every,
        "trajectories": config.trajectories,
        "batches": config.batches,
        "scheme": config.scheme,
        "master_seed": config.master_seed,
        "workers": config.workers,
        "deterministic": config.deterministic,
    }


def run(config: SimConfig) -> list[CorrelationReport]:
    """Full pipeline: integrate, derive reports, emit CSV + metadata."""
    t0 = time.perf_counter()
    acc = run_accumulator(config)
    reports = reports_from_accumulator(config, acc)
    if config.output_path:
        write_csv(config.output_path, reports)
        meta = {
            "config": _config_record(config),
            "version": __version__,
            "backend": kernel.BACKEND,
            "wall_time_s": time.perf_counter() - t0,
            "divergence_count": 0,
        }
        with open(config.output_path + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2)
    return reports


def sweep(base: SimConfig, pumps: list[PumpSpec]) -> list[str]:
    """Run once per pump spec; output files indexed by position."""
    if not base.output_path:
        raise ConfigError("sweep requires an output path")
    stem, dot, ext = base.output_path.rpartition(".")
    if not dot:
        stem, ext = base.output_path, "csv"
    paths = []
    for i, pump in enumerate(pumps):
        path = f"{stem}_{i:02d}.{ext}"
        run(replace(base, pump=pump, output_path=path))
        paths.append(path)
    return paths
