import math
from dataclasses import replace

import numpy as np
import pytest

from cavmag.dynamics import (
    DiffusionMatrix,
    DriftMatrix,
    build_diffusion,
    build_drift,
    stability_check,
)
from cavmag.model import (
    Detunings,
    DriveParams,
    Environment,
    SystemParams,
    default_params,
    detunings_from,
)


def _random_params(rng):
    return SystemParams(
        omega_a=10000.0 + rng.uniform(-20, 20),
        omega_m1=10000.0 + rng.uniform(-20, 20),
        omega_m2=10000.0 + rng.uniform(-20, 20),
        omega_s=10000.0,
        kappa_a=rng.uniform(0.5, 8.0),
        kappa_m1=rng.uniform(0.2, 4.0),
        kappa_m2=rng.uniform(0.2, 4.0),
        g1=rng.uniform(0.0, 25.0),
        g2=rng.uniform(0.0, 25.0),
    )


def _rotation6(phi):
    c, s = math.cos(phi), math.sin(phi)
    block = np.array([[c, s], [-s, c]])
    out = np.zeros((6, 6))
    for k in range(3):
        out[2 * k:2 * k + 2, 2 * k:2 * k + 2] = block
    return out


def test_drift_decoupled_damped_modes():
    params, _ = default_params()
    params = replace(params, g1=0.0, g2=0.0)
    a = build_drift(Detunings(0.0, 0.0, 0.0), params).a
    ka, km = params.kappa_a, params.kappa_m1
    assert np.array_equal(a, np.diag([-ka, -ka, -km, -km, -km, -km]))


def test_drift_coupling_pattern_at_defaults():
    params, _ = default_params()
    a = build_drift(detunings_from(params), params).a
    g1 = params.g1
    assert a[0][3] == g1
    assert a[1][2] == -g1
    assert a[2][1] == g1
    assert a[3][0] == -g1
    assert a[2][2] == -params.kappa_m1


def test_drift_detuning_entries():
    params, _ = default_params()
    a = build_drift(Detunings(params.kappa_a, 0.0, 0.0), params).a
    assert a[0][1] == params.kappa_a
    assert a[1][0] == -params.kappa_a


def test_drift_no_direct_magnon_coupling():
    rng = np.random.default_rng(7)
    for _ in range(10):
        params = _random_params(rng)
        a = build_drift(detunings_from(params), params).a
        assert np.all(a[2:4, 4:6] == 0.0)
        assert np.all(a[4:6, 2:4] == 0.0)


def test_diffusion_vacuum_inputs():
    params, _ = default_params()
    d = build_diffusion(params, DriveParams(r=0.0),
                        Environment(0.0, 0.0, 0.0)).d
    ka, km = params.kappa_a, params.kappa_m1
    assert np.array_equal(d, np.diag([ka, ka, km, km, km, km]))


def test_diffusion_squeezed_along_axes():
    # theta = 0 squeezes one cavity quadrature to kappa_a e^(-2r) and
    # antisqueezes the other to kappa_a e^(+2r)
    params, _ = default_params()
    d = build_diffusion(params, DriveParams(r=2.0, theta=0.0),
                        Environment(0.0, 0.0, 0.0)).d
    ka = params.kappa_a
    assert d[0, 0] == pytest.approx(ka * math.exp(4.0), rel=1e-13)
    assert d[1, 1] == pytest.approx(ka * math.exp(-4.0), rel=1e-13)
    assert d[0, 1] == 0.0


def test_diffusion_rotated_phase():
    params, _ = default_params()
    d = build_diffusion(params, DriveParams(r=1.0, theta=math.pi / 2),
                        Environment(0.0, 0.0, 0.0)).d
    ka = params.kappa_a
    assert d[0, 0] == pytest.approx(ka * math.cosh(2.0), rel=1e-12)
    assert d[1, 1] == pytest.approx(ka * math.cosh(2.0), rel=1e-12)
    assert d[0, 1] == pytest.approx(ka * math.sinh(2.0), rel=1e-12)


def test_diffusion_block_structure():
    params, _ = default_params()
    _, env = default_params()
    d = build_diffusion(params, DriveParams(r=1.7, theta=0.9), env).d
    mask = np.zeros((6, 6), dtype=bool)
    mask[:2, :2] = mask[2:4, 2:4] = mask[4:6, 4:6] = True
    assert np.all(d[~mask] == 0.0)
    assert d[2, 3] == 0.0 and d[4, 5] == 0.0


def test_diffusion_minimum_uncertainty_bath():
    # at T = 0 the cavity block determinant is (2 kappa_a)^2 / 4 for any drive
    params, _ = default_params()
    rng = np.random.default_rng(11)
    for _ in range(10):
        drive = DriveParams(r=rng.uniform(0.0, 3.0), theta=rng.uniform(0.0, 2 * math.pi))
        d = build_diffusion(params, drive, Environment(0.0, 0.0, 0.0)).d
        det = d[0, 0] * d[1, 1] - d[0, 1] ** 2
        assert det / (2.0 * params.kappa_a) ** 2 == pytest.approx(0.25, rel=1e-9)


def test_diffusion_phase_period():
    params, env = default_params()
    d1 = build_diffusion(params, DriveParams(r=1.5, theta=0.9), env).d
    d2 = build_diffusion(params, DriveParams(r=1.5, theta=0.9 + 2 * math.pi), env).d
    assert np.allclose(d1, d2, rtol=0.0, atol=1e-12 * np.abs(d1).max())


def test_global_rotation_covariance():
    # R A R^T = A for any detunings; D(theta - 2 phi) = R(phi) D(theta) R(phi)^T
    params, env = default_params()
    params = replace(params, omega_a=10003.0, omega_m1=9998.5, omega_m2=10001.2)
    a = build_drift(detunings_from(params), params).a
    for phi in (0.3, 1.7):
        rot = _rotation6(phi)
        assert np.allclose(rot @ a @ rot.T, a, rtol=0.0, atol=1e-12 * np.abs(a).max())
    phi, theta = 0.3, 1.1
    rot = _rotation6(phi)
    d_theta = build_diffusion(params, DriveParams(2.0, theta), env).d
    d_shift = build_diffusion(params, DriveParams(2.0, theta - 2 * phi), env).d
    assert np.allclose(rot @ d_theta @ rot.T, d_shift,
                       rtol=0.0, atol=1e-12 * np.abs(d_theta).max())


def test_diffusion_conditioning_warning():
    params, env = default_params()
    with pytest.warns(RuntimeWarning):
        build_diffusion(params, DriveParams(r=6.5), env)


def test_diffusion_validation():
    bad = np.zeros((6, 6))
    bad[0, 1] = 1.0  # asymmetric
    with pytest.raises(ValueError):
        DiffusionMatrix(bad)
    indefinite = -np.eye(6)
    with pytest.raises(ValueError):
        DiffusionMatrix(indefinite)


def test_stability_decoupled():
    params, _ = default_params()
    params = replace(params, g1=0.0, g2=0.0)
    report = stability_check(build_drift(Detunings(0.0, 0.0, 0.0), params))
    assert report.stable
    assert report.max_real_part == pytest.approx(-params.kappa_m1, rel=1e-12)
    assert report.margin == -report.max_real_part


def test_stability_at_defaults():
    params, _ = default_params()
    report = stability_check(build_drift(detunings_from(params), params))
    assert report.stable


def test_stability_detects_gain():
    a = np.diag([1.0, -1.0, -1.0, -1.0, -1.0, -1.0])
    report = stability_check(DriftMatrix(a))
    assert not report.stable
    assert report.max_real_part == pytest.approx(1.0)


def test_drift_matrix_is_read_only():
    params, _ = default_params()
    drift = build_drift(detunings_from(params), params)
    with pytest.raises(ValueError):
        drift.a[0, 0] = 99.0
