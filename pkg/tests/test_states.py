import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ppshg.states import (
    PumpSpec,
    input_moments,
    sample_coherent,
    sample_squeezed,
    squeezed_lambdas,
    PHI_Y,
)

from conftest import batch_se


def test_coherent_vacuum():
    ens = sample_coherent(0j, 3)
    assert len(ens) == 3
    for arr in (ens.alpha, ens.alpha_plus, ens.beta, ens.beta_plus):
        assert np.all(arr == 0)


def test_coherent_paper_parameters():
    ens = sample_coherent(1e3 + 0j, 1)
    p = ens.point(0)
    assert (p.alpha, p.alpha_plus, p.beta, p.beta_plus) == (1000, 1000, 0, 0)


def test_coherent_point_distribution_intensity():
    ens = sample_coherent(3 + 4j, 50)
    assert np.all(ens.alpha_plus * ens.alpha == 25)


def test_pump_spec_rejects_negative_r():
    with pytest.raises(ValueError):
        PumpSpec(1.0, r=-0.1)


def test_pump_spec_rejects_general_angle():
    with pytest.raises(ValueError):
        PumpSpec(1.0, r=0.5, phi=0.3)


def test_squeezed_r0_is_coherent(rng):
    ens = sample_squeezed(PumpSpec(2 + 1j, r=0.0), 10, rng)
    assert np.all(ens.alpha == 2 + 1j)
    assert np.all(ens.alpha_plus == 2 - 1j)


@pytest.mark.parametrize("phi", [0.0, PHI_Y])
def test_squeezed_lambdas_match_targets(phi):
    r = 0.8
    lam1, lam2 = squeezed_lambdas(r, phi)
    sh, ch = math.sinh(r), math.cosh(r)
    # mean(da*dap) = lam1^2 + lam2^2, mean(da*da) = lam1^2 - lam2^2
    assert (lam1**2 + lam2**2).real == pytest.approx(sh * sh)
    target = -sh * ch if phi == 0.0 else sh * ch
    assert (lam1**2 - lam2**2).real == pytest.approx(target)


def _sampled_moments(spec, count, rng, batches=100):
    ens = sample_squeezed(spec, count, rng)
    da = (ens.alpha - spec.alpha0).reshape(batches, -1)
    dap = (ens.alpha_plus - np.conj(spec.alpha0)).reshape(batches, -1)
    apa = (ens.alpha_plus * ens.alpha).reshape(batches, -1)
    return {
        "a": ens.alpha.reshape(batches, -1).mean(axis=1),
        "ap": ens.alpha_plus.reshape(batches, -1).mean(axis=1),
        "dada": (da * da).mean(axis=1),
        "dapdap": (dap * dap).mean(axis=1),
        "dadap": (da * dap).mean(axis=1),
        "apa": apa.mean(axis=1),
    }


@pytest.mark.parametrize(
    "r,phi", [(0.3, 0.0), (1.0, 0.0), (1.0, PHI_Y), (1.5, PHI_Y)]
)
def test_sampler_moments_within_5se(r, phi, rng):
    """The six estimated moments hit the analytic targets within 5 SE."""
    spec = PumpSpec(3 - 2j, r=r, phi=phi)
    mom = _sampled_moments(spec, 1_000_000, rng)
    sh, ch = math.sinh(r), math.cosh(r)
    dada = -sh * ch if phi == 0.0 else sh * ch
    targets = {
        "a": spec.alpha0,
        "ap": np.conj(spec.alpha0),
        "dada": dada,
        "dapdap": dada,
        "dadap": sh * sh,
        "apa": abs(spec.alpha0) ** 2 + sh * sh,
    }
    for name, vals in mom.items():
        for part in (np.real, np.imag):
            se = batch_se(part(vals))
            err = abs(part(vals).mean() - part(np.complex128(targets[name])))
            assert err <= 5 * se + 1e-12, (name, part.__name__, err, se)


def test_squeezed_quadrature_variances(rng):
    """r=1, phi=0: V(Xa) = e^-2, V(Ya) = e^2 from the sampled ensemble."""
    spec = PumpSpec(5.0, r=1.0)
    ens = sample_squeezed(spec, 1_000_000, rng)
    x = (ens.alpha + ens.alpha_plus).reshape(100, -1)
    y = (-1j * (ens.alpha - ens.alpha_plus)).reshape(100, -1)
    vx = 1 + (x * x).mean(axis=1).real - x.mean(axis=1).real ** 2
    vy = 1 + (y * y).mean(axis=1).real - y.mean(axis=1).real ** 2
    assert abs(vx.mean() - math.exp(-2)) <= 5 * batch_se(vx)
    assert abs(vy.mean() - math.exp(2)) <= 5 * batch_se(vy)


def test_squeezed_mean_photon_number(rng):
    spec = PumpSpec(1e3, r=1.0)
    mom = _sampled_moments(spec, 400_000, rng)
    se = batch_se(mom["apa"].real)
    assert abs(mom["apa"].real.mean() - 1_000_001.381097845) <= 5 * se


def test_input_moments_coherent():
    m = input_moments(PumpSpec(5.0))
    assert m.N == 25
    assert m.VN == 25
    assert m.g2 == 1.0
    assert (m.VX, m.VY) == (1.0, 1.0)


def test_input_moments_y_squeezed():
    # frozen from VN = |a0|^2 e^{2r} + 2 sinh^2 r cosh^2 r and g2 = 1 + (VN-N)/N^2
    m = input_moments(PumpSpec(1e2, r=1.0, phi=PHI_Y))
    assert m.VN == pytest.approx(73897.1380475155, rel=1e-12)
    assert m.g2 == pytest.approx(1.0006387811134685, rel=1e-12)


def test_input_moments_x_squeezed_antibunched():
    m = input_moments(PumpSpec(1e2, r=1.0))
    assert m.VN == pytest.approx(1359.9298905751311, rel=1e-12)
    assert m.g2 < 1  # squeezed in X -> antibunched


def test_input_moments_vacuum_g2_absent():
    assert input_moments(PumpSpec(0j, r=0.0)).g2 is None


@given(
    a0=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3,
                          allow_nan=False, allow_infinity=False)
)
def test_g2_is_one_for_any_coherent_state(a0):
    assert input_moments(PumpSpec(a0)).g2 == 1.0


@given(
    r=st.floats(0, 2),
    phi=st.sampled_from([0.0, PHI_Y]),
    mag=st.floats(0.1, 100),
)
def test_heisenberg_bound(r, phi, mag):
    m = input_moments(PumpSpec(mag + 0j, r=r, phi=phi))
    assert m.VX * m.VY >= 1 - 1e-12
