"""Acceptance suite: every primary criterion at its stated tolerance.

Each test prints one `<name> PASS/FAIL <detail>` line (visible with -s or on
failure).  The alpha-squared variant of the variance identities is
implemented verbatim and marked xfail(strict): the factor alpha it places
on the (y-1)^2 integral does not arise in the derivation, so it genuinely
fails away from alpha = 1; the corrected identities are asserted separately
and pass.  See test_orbit_stats.py for the corrected derivation checks.
"""

import pytest

from lvthermo import checks


def _report(result):
    print(f"{result.name:38s} {'PASS' if result.passed else 'FAIL'} "
          f"{result.detail}")
    return result


def test_01_mean_identity():
    assert _report(checks.check_mean_identity()).passed


@pytest.mark.xfail(
    strict=True,
    reason="the alpha-squared variant of the variance identities does not "
           "hold away from alpha = 1; the corrected identities are covered "
           "by test_02b")
def test_02_variance_identities_alpha_squared():
    assert _report(checks.check_variance_identities_alpha_squared()).passed


def test_02b_variance_identities_corrected():
    assert _report(checks.check_variance_identities_corrected()).passed


def test_03_energy_conservation():
    assert _report(checks.check_energy_conservation()).passed


def test_04_area_derivative_is_period():
    assert _report(checks.check_area_derivative_is_period()).passed


def test_05_helmholtz_relation():
    assert _report(checks.check_helmholtz_relation()).passed


def test_06_small_oscillation_limits():
    assert _report(checks.check_small_oscillation_limits()).passed


def test_07_eos_monotonicity():
    assert _report(checks.check_eos_monotonicity()).passed


def test_08_master_equation_stationarity():
    assert _report(checks.check_master_equation_stationarity()).passed


def test_09_law_of_large_numbers():
    assert _report(checks.check_law_of_large_numbers()).passed


def test_10_decomposition_eigenvalues():
    assert _report(checks.check_decomposition_eigenvalues()).passed


def test_11_h_diffusion():
    assert _report(checks.check_h_diffusion()).passed


def test_12_entropy_conservation():
    assert _report(checks.check_entropy_conservation()).passed


def test_13_reproducibility():
    assert _report(checks.check_reproducibility()).passed
