import math

import pytest

from lvthermo import (EnergyBelowMinimum, ModelParams, area_invariant,
                      dA_dalpha, dA_dh, eos_grid, f_alpha_fn,
                      helmholtz_residual, orbit_from_energy, theta_fn)
from lvthermo.eos import DEFAULT_ALPHAS, default_offsets


def test_dA_dh_equals_period():
    for alpha in (0.5, 1.0, 2.0):
        p = ModelParams(alpha)
        h = p.h_min() + 1.0
        tau = orbit_from_energy(h, p, 1e-10).period_tau
        assert dA_dh(h, p, tol=1e-10) == pytest.approx(tau, rel=1e-6)


def test_dA_dalpha_matches_orbit_integral():
    # the closed form -int (x - ln x) dt vs the finite difference at fixed h
    from lvthermo import summarize
    p = ModelParams(1.0)
    h = 2.61
    s = summarize(orbit_from_energy(h, p, 1e-10))
    assert dA_dalpha(h, p, tol=1e-10) == pytest.approx(s.dA_dalpha, rel=1e-5)


def test_theta_consistency():
    p = ModelParams(1.0)
    h = 2.61
    theta = theta_fn(h, p, tol=1e-10)
    assert theta == pytest.approx(
        area_invariant(h, p, tol=1e-10) / dA_dh(h, p, tol=1e-10), rel=1e-6)


def test_force_bound_and_sign():
    p = ModelParams(0.7)
    assert f_alpha_fn(p.h_min() + 0.5, p, tol=1e-10) <= -1.0


def test_helmholtz_residual_second_order():
    p = ModelParams(1.0)
    r1 = helmholtz_residual(2.61, p, 1e-3, 1e-3, tol=1e-10)
    r2 = helmholtz_residual(2.61, p, 5e-4, 5e-4, tol=1e-10)
    assert abs(r1.dh_predicted - r1.dh_actual) < 1e-5
    assert 3.0 < abs(r1.residual) / abs(r2.residual) < 5.0


def test_derivative_guards():
    p = ModelParams(1.0)
    with pytest.raises(EnergyBelowMinimum):
        dA_dh(p.h_min() + 1e-6, p)
    with pytest.raises(EnergyBelowMinimum):
        dA_dalpha(p.h_min() + 1e-6, p)


def test_eos_grid_shape_and_order():
    records = eos_grid([0.5, 1.0], [0.1, 1.0], tol=1e-8)
    assert [(r.alpha, round(r.h, 6)) for r in records] == [
        (0.5, 1.6), (0.5, 2.5), (1.0, 2.1), (1.0, 3.0)]
    for r in records:
        assert r.error is None
        assert r.ln_area == pytest.approx(math.log(r.area_A))
        assert r.f_alpha_abs >= 1.0


def test_eos_grid_worker_parity():
    serial = eos_grid(DEFAULT_ALPHAS[:2], [0.2, 0.9], tol=1e-8, workers=1)
    parallel = eos_grid(DEFAULT_ALPHAS[:2], [0.2, 0.9], tol=1e-8, workers=4)
    for a, b in zip(serial, parallel):
        assert a == b


def test_eos_grid_error_rows_do_not_abort():
    # an offset of zero sits exactly at h_min: that cell fails, others succeed
    records = eos_grid([1.0], [0.0, 1.0], tol=1e-8)
    assert records[0].error == "EnergyBelowMinimum"
    assert math.isnan(records[0].tau)
    assert records[1].error is None


def test_default_offsets():
    offs = default_offsets(5)
    assert len(offs) == 5
    assert offs[0] == pytest.approx(1e-2)
    assert offs[-1] == pytest.approx(2.0)
    assert all(a < b for a, b in zip(offs, offs[1:]))
