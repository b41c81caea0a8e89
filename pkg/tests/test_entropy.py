import math

import numpy as np
import pytest

from lvthermo import (DensityField, DomainLeakWarning, EnergyBelowMinimum,
                      ModelParams, boltzmann_entropy_density, orbit_extents,
                      orbit_from_energy, relative_entropy_at_time,
                      stationary_divergence)

P1 = ModelParams(1.0)
H = 2.61


@pytest.fixture(scope="module")
def tau():
    return orbit_from_energy(H, P1, 1e-10).period_tau


def _field(h_level=H, quad_n=64):
    return DensityField(
        w0=lambda x, y: np.exp(-((x - 1.2) ** 2 + (y - 1.0) ** 2) / 0.02),
        rho=lambda hh: np.ones_like(hh),
        domain=orbit_extents(H, P1),
        quadrature_n=quad_n,
        h_level=h_level)


def test_stationary_divergence_analytic():
    rng = np.random.default_rng(3)
    cases = [(lambda h: 1.0, lambda h: 0.0),
             (lambda h: math.exp(-h), lambda h: -math.exp(-h)),
             (lambda h: h * h, lambda h: 2.0 * h)]
    for rho, rho_p in cases:
        for _ in range(10):
            x, y = 0.2 + 4.8 * rng.random(2)
            assert abs(stationary_divergence((x, y), P1, rho, rho_p)) < 1e-10


def test_stationary_divergence_numeric_agrees():
    rho = lambda h: np.exp(-h)
    for state in ((0.7, 1.4), (2.1, 0.5)):
        num = stationary_divergence(state, P1, rho, None, method="numeric")
        assert abs(num) < 1e-8


def test_stationary_divergence_bad_method():
    with pytest.raises(ValueError):
        stationary_divergence((1.0, 1.0), P1, lambda h: 1.0, lambda h: 0.0,
                              method="magic")


def test_relative_entropy_conserved(tau):
    field = _field()
    for psi in ("shannon", "zlnz"):
        s0 = relative_entropy_at_time(field, P1, 0.0, psi, tol=1e-10)
        s1 = relative_entropy_at_time(field, P1, tau / 2.0, psi, tol=1e-10)
        s2 = relative_entropy_at_time(field, P1, tau, psi, tol=1e-10)
        assert s1 == pytest.approx(s0, abs=1e-4)
        assert s2 == pytest.approx(s0, abs=1e-4)
        assert s0 != 0.0


def test_relative_entropy_custom_psi(tau):
    field = _field()
    s_named = relative_entropy_at_time(field, P1, tau / 3.0, "zlnz",
                                       tol=1e-10)
    psi = lambda w: np.where(w > 0, w * np.log(np.where(w > 0, w, 1.0)), 0.0)
    s_callable = relative_entropy_at_time(field, P1, tau / 3.0, psi,
                                          tol=1e-10)
    assert s_callable == pytest.approx(s_named, rel=1e-10)


def test_relative_entropy_rejects_negative_time():
    with pytest.raises(ValueError):
        relative_entropy_at_time(_field(), P1, -1.0)


def test_relative_entropy_bad_psi():
    with pytest.raises(ValueError):
        relative_entropy_at_time(_field(), P1, 0.0, psi_mode="bogus")


def test_domain_leak_warning():
    # without the sublevel-set restriction, backward characteristics of
    # corner nodes leave the rectangle and a warning must fire
    field = _field(h_level=None, quad_n=16)
    with pytest.warns(DomainLeakWarning):
        relative_entropy_at_time(field, P1, 1.0, "one", tol=1e-8)


def test_entropy_integral_recovers_area(tau):
    # w0 = 1, Psi = 1, rho = 1 on H <= h: the integral is the invariant
    # area of the sublevel set (quadrature-limited accuracy: the integrand
    # has a sharp boundary)
    from lvthermo import summarize
    field = DensityField(w0=lambda x, y: np.ones_like(x),
                         rho=lambda hh: np.ones_like(hh),
                         domain=orbit_extents(H, P1), quadrature_n=200,
                         h_level=H)
    s0 = relative_entropy_at_time(field, P1, 0.0, "one", tol=1e-9)
    area = summarize(orbit_from_energy(H, P1, 1e-10)).area_invariant
    assert s0 == pytest.approx(area, rel=1e-2)


def test_boltzmann_entropy_density_is_period(tau):
    # w0 = 1, Psi = 1: the orbit integral is the period, the density of
    # states dA/dh
    val = boltzmann_entropy_density(P1, H, tol=1e-10)
    assert val == pytest.approx(tau, rel=1e-8)


def test_boltzmann_entropy_below_minimum():
    with pytest.raises(EnergyBelowMinimum):
        boltzmann_entropy_density(P1, 1.9)
