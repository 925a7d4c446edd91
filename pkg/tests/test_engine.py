import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ppshg.engine import (
    SdeConfig,
    TrajectoryDivergence,
    classical_solution,
    drift,
    integrate_trajectory,
    noise_increment,
    step,
    zeta_scale,
)
from ppshg.states import PhasePoint

from conftest import batch_se


def test_drift_no_pump():
    d = drift(PhasePoint(0, 0, 2 + 1j, 2 - 1j), kappa=0.5)
    assert (d.alpha, d.alpha_plus, d.beta, d.beta_plus) == (0, 0, 0, 0)


def test_drift_initial_condition():
    d = drift(PhasePoint(1e3, 1e3, 0, 0), kappa=1e-2)
    assert d.beta == -5000
    assert d.beta_plus == -5000
    assert d.alpha == 0


def test_drift_hand_values():
    d = drift(PhasePoint(1, 1, -1, -1), kappa=1.0)
    assert (d.alpha, d.alpha_plus, d.beta, d.beta_plus) == (-1, -1, -0.5, -0.5)


def test_noise_vanishes_for_empty_harmonic(rng):
    inc = noise_increment(PhasePoint(5, 5, 0, 0), 1e-2, 1e-2, rng)
    assert inc.alpha == 0 and inc.alpha_plus == 0


def test_noise_squared_mean_is_kappa_beta_dz(rng):
    """mean((d alpha)^2) = kappa*beta*dz, here negative via the imaginary root."""
    kappa, dz, beta = 1e-2, 1e-2, -1.0
    root = cmath.sqrt(kappa * beta)
    eta = rng.standard_normal(1_000_000)
    inc2 = (root * eta * math.sqrt(dz)) ** 2
    batches = inc2.reshape(100, -1).mean(axis=1)
    assert abs(batches.mean().real - kappa * beta * dz) <= 5 * batch_se(batches.real)
    assert abs(batches.mean().imag) <= 5 * batch_se(batches.imag) + 1e-15


def test_noise_increments_independent(rng):
    p = PhasePoint(0, 0, 1 + 0.5j, 1 - 0.5j)
    incs = [noise_increment(p, 1e-2, 1e-2, rng) for _ in range(100_000)]
    da = np.array([i.alpha for i in incs])
    dap = np.array([i.alpha_plus for i in incs])
    cov = (da * dap).reshape(100, -1).mean(axis=1)
    assert abs(cov.mean()) <= 5 * batch_se(cov.real) + 5 * batch_se(cov.imag)


def test_step_zero_field():
    cfg = SdeConfig(kappa=1e-2, z_max=1.0, n_steps=10)
    out = step(PhasePoint(0, 0, 0, 0), cfg, rng=None)
    assert (out.alpha, out.alpha_plus, out.beta, out.beta_plus) == (0, 0, 0, 0)


def test_step_deterministic_first_order():
    a0, kappa = 10.0, 1e-2
    cfg = SdeConfig(kappa=kappa, z_max=1e-4, n_steps=1, scheme="euler")
    out = step(PhasePoint(a0, a0, 0, 0), cfg, rng=None)
    assert out.beta == pytest.approx(-0.5 * kappa * a0**2 * cfg.dz, rel=1e-12)


@pytest.mark.parametrize("scheme,order", [("euler", 1), ("midpoint", 2)])
def test_deterministic_convergence_order(scheme, order):
    """Halving dz scales the endpoint error by ~2^-order."""
    a0, kappa = 100.0, 1e-2
    scale = zeta_scale(kappa, a0)
    z1 = 1.0 / scale
    exact_alpha, _ = classical_solution(a0, 1.0)

    def endpoint_error(n_steps):
        cfg = SdeConfig(kappa=kappa, z_max=z1, n_steps=n_steps, scheme=scheme)
        p = integrate_trajectory(PhasePoint(a0, a0, 0, 0), cfg, rng=None)
        return abs(p.alpha - exact_alpha)

    e1, e2 = endpoint_error(500), endpoint_error(1000)
    ratio = e1 / e2
    assert 2**order * 0.7 < ratio < 2**order * 1.4


def test_schemes_agree_in_deterministic_limit():
    a0, kappa = 50.0, 1e-2
    z1 = 1.0 / zeta_scale(kappa, a0)
    ends = []
    for scheme in ("euler", "midpoint"):
        cfg = SdeConfig(kappa=kappa, z_max=z1, n_steps=20000, scheme=scheme)
        ends.append(integrate_trajectory(PhasePoint(a0, a0, 0, 0), cfg, rng=None))
    assert ends[0].alpha == pytest.approx(ends[1].alpha, rel=1e-4)


def test_schemes_agree_in_law():
    """Ito-Stratonovich correction vanishes here: euler and midpoint means
    agree as dz shrinks, with the same noise realisations."""
    from ppshg import kernel

    a0, kappa, n, n_steps = 5.0, 1e-2, 20_000, 600
    dz = (0.6 / zeta_scale(kappa, a0)) / n_steps
    noise = np.random.Generator(np.random.Philox(key=(77, 0))).standard_normal(
        (n_steps, 2, n)
    )
    means = {}
    for scheme in ("euler", "midpoint"):
        a = np.full(n, a0, dtype=np.complex128)
        ap = a.copy()
        b = np.zeros(n, dtype=np.complex128)
        bp = b.copy()
        kernel.run_steps(a, ap, b, bp, noise, kappa, dz, scheme == "midpoint", True)
        means[scheme] = (ap * a).mean()
    assert means["euler"].real == pytest.approx(means["midpoint"].real, rel=5e-3)


def test_divergence_signalled():
    cfg = SdeConfig(kappa=1.0, z_max=10.0, n_steps=10)
    with pytest.raises(TrajectoryDivergence, match="trajectory 7"):
        integrate_trajectory(
            PhasePoint(1e11, 1e11, 1e11, 1e11), cfg, rng=None, trajectory_index=7
        )


def test_observer_grid_positions():
    cfg = SdeConfig(kappa=1e-2, z_max=1.0, n_steps=100, record_stride=25)
    seen = []
    integrate_trajectory(
        PhasePoint(1, 1, 0, 0), cfg, rng=None, observer=lambda z, p: seen.append(z)
    )
    assert seen == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])


def test_classical_solution_at_zero():
    assert classical_solution(7.0, 0.0) == (7.0, 0.0)


def test_classical_solution_frozen_values():
    # frozen from sech/tanh evaluation
    a, b = classical_solution(1e3, 1.0)
    assert a == pytest.approx(648.0542736638855, rel=1e-12)
    assert b == pytest.approx(-538.5283921883663, rel=1e-12)


def test_classical_solution_full_conversion_limit():
    a, b = classical_solution(10.0, 30.0)
    assert abs(a) < 1e-8
    assert b == pytest.approx(-10 / math.sqrt(2), rel=1e-10)


@given(zeta=st.floats(0, 10), a0=st.floats(0.1, 1e4))
def test_classical_solution_conserves_flux(a0, zeta):
    a, b = classical_solution(a0, zeta)
    assert a * a + 2 * b * b == pytest.approx(a0 * a0, rel=1e-12)


def test_classical_solution_satisfies_noiseless_equations():
    """Substitute the closed form into d(beta)/dz = -kappa/2 alpha^2."""
    a0, kappa = 12.0, 1e-2
    scale = zeta_scale(kappa, a0)
    h = 1e-6
    for zeta in (0.3, 1.0, 2.5):
        _, b_lo = classical_solution(a0, zeta - h * scale)
        _, b_hi = classical_solution(a0, zeta + h * scale)
        a, _ = classical_solution(a0, zeta)
        dbdz = (b_hi - b_lo) / (2 * h)
        assert dbdz == pytest.approx(-0.5 * kappa * a * a, rel=1e-6)
