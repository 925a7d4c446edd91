"""Moment accumulation and derived correlations.

Trajectory averages of monomials in (alpha, alpha_plus, beta, beta_plus)
estimate normally-ordered operator expectation values, from which we
build quadrature variances, Duan-Simon sums, Reid inferred-variance
products, g2(0), photon numbers and the conversion efficiency.

Quadrature convention: X = a + a^dag, Y = -i(a - a^dag), so coherent
states and vacuum have V(X) = V(Y) = 1.

Error bars come from batch means: trajectories are split into B batches,
every scalar is recomputed per batch, and the standard error is the
batch-to-batch standard deviation over sqrt(B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import Ensemble, PhasePoint

#: Monomial set accumulated per trajectory, in storage order.
MONOMIALS = (
    "a", "ap", "a2", "ap2", "apa",
    "b", "bp", "b2", "bp2", "bpb",
    "ab", "abp", "apb", "apbp",
    "ap2a2", "bp2b2",
)
N_MONOMIALS = len(MONOMIALS)

#: Reported scalars, in CSV column order.
SCALARS = (
    "Na", "Nb", "efficiency",
    "VXa", "VYa", "VXb", "VYb", "VXaXb", "VYaYb",
    "DS_minus", "DS_plus", "EPR_a", "EPR_b",
    "g2a", "g2b",
)

DEFAULT_BATCHES = 100
N_FLOOR = 1e-9           # below this photon number, g2 is reported absent
VAR_FLOOR = 1e-12        # Reid denominators smaller than this are degenerate


class InsufficientCount(ValueError):
    pass


class InsufficientBatches(ValueError):
    pass


class DegenerateDenominator(ValueError):
    pass


class NonFiniteInput(ValueError):
    pass


class MomentAccumulator:
    """Mergeable running sums of the monomial set, per grid point and batch."""

    def __init__(self, n_grid: int, n_batches: int = DEFAULT_BATCHES):
        if n_grid < 1 or n_batches < 1:
            raise ValueError("n_grid and n_batches must be >= 1")
        self.n_grid = n_grid
        self.n_batches = n_batches
        self.sums = np.zeros((n_grid, n_batches, N_MONOMIALS), dtype=np.complex128)
        self.counts = np.zeros((n_grid, n_batches), dtype=np.int64)

    @staticmethod
    def _monomials(a, ap, b, bp):
        return (
            a, ap, a * a, ap * ap, ap * a,
            b, bp, b * b, bp * bp, bp * b,
            a * b, a * bp, ap * b, ap * bp,
            ap * ap * a * a, bp * bp * b * b,
        )

    def accumulate(self, point: PhasePoint, grid_index: int, batch_index: int):
        """Add a single phase point (scalar reference path)."""
        vals = (point.alpha, point.alpha_plus, point.beta, point.beta_plus)
        if not all(np.isfinite(v) for v in vals):
            raise NonFiniteInput(f"non-finite phase point {point}")
        self.sums[grid_index, batch_index] += np.array(
            self._monomials(*vals), dtype=np.complex128
        )
        self.counts[grid_index, batch_index] += 1

    def accumulate_batch(self, ens: Ensemble, grid_index: int, batch_index: int):
        """Add every trajectory of an ensemble in one vectorised pass."""
        arrs = (ens.alpha, ens.alpha_plus, ens.beta, ens.beta_plus)
        if not all(np.all(np.isfinite(v)) for v in arrs):
            raise NonFiniteInput(
                f"non-finite trajectory in batch {batch_index} "
                f"at grid index {grid_index}"
            )
        for k, mono in enumerate(self._monomials(*arrs)):
            self.sums[grid_index, batch_index, k] += mono.sum()
        self.counts[grid_index, batch_index] += len(ens)

    def merge(self, other: "MomentAccumulator"):
        """Add another accumulator; associative, so any trajectory
        partition reproduces the serial result."""
        if (self.n_grid, self.n_batches) != (other.n_grid, other.n_batches):
            raise ValueError("accumulator shapes differ")
        self.sums += other.sums
        self.counts += other.counts

    def means(self, grid_index: int, batch_index: int | None = None) -> np.ndarray:
        """Pooled (or single-batch) monomial means at one grid point."""
        if batch_index is None:
            count = self.counts[grid_index].sum()
            total = self.sums[grid_index].sum(axis=0)
        else:
            count = self.counts[grid_index, batch_index]
            total = self.sums[grid_index, batch_index]
        if count < 2:
            raise InsufficientCount(f"need >= 2 points, have {count}")
        return total / count


@dataclass(frozen=True)
class QuadStats:
    VXa: float
    VYa: float
    VXb: float
    VYb: float
    VXaXb: float
    VYaYb: float
    mean_Xa: float
    mean_Ya: float
    mean_Xb: float
    mean_Yb: float


def _idx(name: str) -> int:
    return MONOMIALS.index(name)


_A, _AP, _A2, _AP2, _APA = (_idx(n) for n in ("a", "ap", "a2", "ap2", "apa"))
_B, _BP, _B2, _BP2, _BPB = (_idx(n) for n in ("b", "bp", "b2", "bp2", "bpb"))
_AB, _ABP, _APB, _APBP = (_idx(n) for n in ("ab", "abp", "apb", "apbp"))
_AP2A2, _BP2B2 = _idx("ap2a2"), _idx("bp2b2")


def _quad_complex(m: np.ndarray) -> dict[str, complex]:
    """Quadrature variances/covariances as complex numbers; the imaginary
    parts are sampling residuals tracked as a diagnostic."""
    vxa = 1 + m[_A2] + m[_AP2] + 2 * m[_APA] - (m[_A] + m[_AP]) ** 2
    vya = 1 - m[_A2] - m[_AP2] + 2 * m[_APA] + (m[_A] - m[_AP]) ** 2
    vxb = 1 + m[_B2] + m[_BP2] + 2 * m[_BPB] - (m[_B] + m[_BP]) ** 2
    vyb = 1 - m[_B2] - m[_BP2] + 2 * m[_BPB] + (m[_B] - m[_BP]) ** 2
    cross = m[_AB] + m[_ABP] + m[_APB] + m[_APBP]
    vxaxb = cross - (m[_A] + m[_AP]) * (m[_B] + m[_BP])
    cross_y = m[_AB] - m[_ABP] - m[_APB] + m[_APBP]
    vyayb = -(cross_y - (m[_A] - m[_AP]) * (m[_B] - m[_BP]))
    return {
        "VXa": vxa, "VYa": vya, "VXb": vxb, "VYb": vyb,
        "VXaXb": vxaxb, "VYaYb": vyayb,
    }


def derive_scalars(m: np.ndarray) -> tuple[dict[str, float], float]:
    """All reported scalars from one monomial-mean vector.

    Returns (scalars, im_residual_max); scalars undefined for the
    ensemble (e.g. g2b at zero harmonic occupation) come back as NaN.
    """
    q = _quad_complex(m)
    na, nb = m[_APA], m[_BPB]
    residual = max(
        abs(v.imag) / (1.0 + abs(v.real))
        for v in (na, nb, *q.values())
    )
    vxa, vya = q["VXa"].real, q["VYa"].real
    vxb, vyb = q["VXb"].real, q["VYb"].real
    vxaxb, vyayb = q["VXaXb"].real, q["VYaYb"].real
    Na, Nb = na.real, nb.real

    out = {
        "Na": Na,
        "Nb": Nb,
        "efficiency": 2 * Nb / (Na + 2 * Nb) if Na + 2 * Nb > 0 else math.nan,
        "VXa": vxa, "VYa": vya, "VXb": vxb, "VYb": vyb,
        "VXaXb": vxaxb, "VYaYb": vyayb,
        "DS_minus": vxa + vxb - 2 * vxaxb + vya + vyb + 2 * vyayb,
        "DS_plus": vxa + vxb + 2 * vxaxb + vya + vyb - 2 * vyayb,
        "g2a": m[_AP2A2].real / Na**2 if Na > N_FLOOR else math.nan,
        "g2b": m[_BP2B2].real / Nb**2 if Nb > N_FLOOR else math.nan,
    }
    if min(vxa, vya, vxb, vyb) < VAR_FLOOR:
        out["EPR_a"] = math.nan
        out["EPR_b"] = math.nan
    else:
        out["EPR_a"] = (vxa - vxaxb**2 / vxb) * (vya - vyayb**2 / vyb)
        out["EPR_b"] = (vxb - vxaxb**2 / vxa) * (vyb - vyayb**2 / vya)
    return out, residual


def quad_stats(acc: MomentAccumulator, grid_index: int) -> QuadStats:
    """Pooled quadrature variances, covariances and quadrature means."""
    m = acc.means(grid_index)
    q = _quad_complex(m)
    return QuadStats(
        VXa=q["VXa"].real, VYa=q["VYa"].real,
        VXb=q["VXb"].real, VYb=q["VYb"].real,
        VXaXb=q["VXaXb"].real, VYaYb=q["VYaYb"].real,
        mean_Xa=(m[_A] + m[_AP]).real,
        mean_Ya=(-1j * (m[_A] - m[_AP])).real,
        mean_Xb=(m[_B] + m[_BP]).real,
        mean_Yb=(-1j * (m[_B] - m[_BP])).real,
    )


def duan_simon(qs: QuadStats) -> tuple[float, float]:
    """V(Xa -+ Xb) + V(Ya +- Yb); a value below 4 certifies entanglement."""
    ds_minus = qs.VXa + qs.VXb - 2 * qs.VXaXb + qs.VYa + qs.VYb + 2 * qs.VYaYb
    ds_plus = qs.VXa + qs.VXb + 2 * qs.VXaXb + qs.VYa + qs.VYb - 2 * qs.VYaYb
    return ds_minus, ds_plus


def reid_epr(qs: QuadStats) -> tuple[float, float, dict[str, float]]:
    """Inferred-variance products; below 1 demonstrates the EPR paradox."""
    if min(qs.VXa, qs.VYa, qs.VXb, qs.VYb) < VAR_FLOOR:
        raise DegenerateDenominator("a same-frequency variance is ~ 0")
    inferred = {
        "VinfXa": qs.VXa - qs.VXaXb**2 / qs.VXb,
        "VinfYa": qs.VYa - qs.VYaYb**2 / qs.VYb,
        "VinfXb": qs.VXb - qs.VXaXb**2 / qs.VXa,
        "VinfYb": qs.VYb - qs.VYaYb**2 / qs.VYa,
    }
    epr_a = inferred["VinfXa"] * inferred["VinfYa"]
    epr_b = inferred["VinfXb"] * inferred["VinfYb"]
    return epr_a, epr_b, inferred


def photon_stats(
    acc: MomentAccumulator, grid_index: int
) -> tuple[float, float, float, float, float]:
    """(Na, Nb, g2a, g2b, efficiency); g2 is NaN below the photon floor."""
    s, _ = derive_scalars(acc.means(grid_index))
    return s["Na"], s["Nb"], s["g2a"], s["g2b"], s["efficiency"]


def standard_errors(
    acc: MomentAccumulator, grid_index: int, min_batches: int = 10
) -> dict[str, float]:
    """Batch-means standard error for every reported scalar."""
    B = acc.n_batches
    if B < min_batches:
        raise InsufficientBatches(f"need >= {min_batches} batches, have {B}")
    if np.any(acc.counts[grid_index] < 2):
        raise InsufficientBatches("every batch needs >= 2 points")
    per_batch = {name: np.empty(B) for name in SCALARS}
    for bi in range(B):
        s, _ = derive_scalars(acc.means(grid_index, bi))
        for name in SCALARS:
            per_batch[name][bi] = s[name]
    return {
        name: float(np.std(vals, ddof=1) / math.sqrt(B))
        for name, vals in per_batch.items()
    }


@dataclass(frozen=True)
class CorrelationReport:
    """Every reported observable at one grid point, with standard errors."""

    zeta: float
    Na: float
    Nb: float
    efficiency: float
    VXa: float
    VYa: float
    VXb: float
    VYb: float
    VXaXb: float
    VYaYb: float
    DS_minus: float
    DS_plus: float
    EPR_a: float
    EPR_b: float
    g2a: float
    g2b: float
    se: dict[str, float]
    im_residual_max: float

    def value(self, name: str) -> float:
        return getattr(self, name)


def report_at(
    acc: MomentAccumulator, grid_index: int, zeta: float
) -> CorrelationReport:
    """Build the full report (values + errors) at one grid point."""
    scalars, residual = derive_scalars(acc.means(grid_index))
    return CorrelationReport(
        zeta=zeta,
        se=standard_errors(acc, grid_index),
        im_residual_max=residual,
        **scalars,
    )
