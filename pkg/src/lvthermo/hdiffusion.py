"""Stochastic averaging of the slowly fluctuating energy H_t.

Over one fast cycle the energy of the finite-population SDE drifts and
diffuses slowly; averaging over the orbit gives a one-dimensional diffusion

    dH = eps * b(H) dt + sqrt(eps) * A(H) dW

whose (unnormalizable) stationary density is

    p_ss(H) = A(H)^-2 * exp( 2 * int_{H0}^{H} b/A^2 dh ).

Note p_ss carries no epsilon: it is independent of the system size.

Two conventions for the coefficients are provided (see
`averaged_coefficients`): "amplitude" (default) averages the instantaneous
noise amplitude, "rms" aggregates the two Wiener terms of the population SDE
in mean square.  They coincide at alpha = 1 up to the averaging order and
differ otherwise; the variance of actual H-increments follows the "rms"
form.
"""

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, ModelParams, hamiltonian, orbit_from_energy
from .errors import EnergyBelowMinimum
from .orbits import orbit_integrals

A_MODES = ("amplitude", "rms")

# below this, a grid point counts as singular (A -> 0 at the lower edge)
A_FLOOR = 1e-12


def averaged_coefficients(h: float, params: ModelParams,
                          mode: str = "amplitude",
                          tol: float = DEFAULT_TOL):
    """(b(h), A(h)) as time averages over the orbit at energy h.

    mode "amplitude" (averaged noise amplitude; exact at alpha = 1):
        b = (1/2) < (1+y)/x + alpha (x+1)/y >
        A = alpha * < sqrt((x-1)^2 (1+y)/x + (y-1)^2 (x+1)/y) >

    mode "rms" (direct second-order expansion of dH under the population
    SDE; the x-term of b carries alpha too, and A is the root of the
    averaged variance of the two aggregated Wiener terms):
        b = (alpha/2) < (1+y)/x + (x+1)/y >
        A = sqrt( < alpha^2 (x-1)^2 (1+y)/x + alpha (y-1)^2 (x+1)/y > )

    The modes coincide at alpha = 1 for b (and for A up to averaging
    order); simulated H-increments follow the "rms" coefficients.
    """
    if mode not in A_MODES:
        raise ValueError(f"mode must be one of {A_MODES}")
    a = params.alpha
    if h <= params.h_min():
        raise EnergyBelowMinimum(f"h = {h} <= h_min = {params.h_min()}")
    orbit = orbit_from_energy(h, params, tol)

    if mode == "amplitude":
        def b_int(x, y):
            return 0.5 * ((1.0 + y) / x + a * (x + 1.0) / y)

        def a_int(x, y):
            return math.sqrt((x - 1.0) ** 2 * (1.0 + y) / x
                             + (y - 1.0) ** 2 * (x + 1.0) / y)
        ib, ia = orbit_integrals(orbit, [b_int, a_int])
        return ib / orbit.period_tau, a * ia / orbit.period_tau

    def b_int(x, y):
        return 0.5 * a * ((1.0 + y) / x + (x + 1.0) / y)

    def var_int(x, y):
        return (a * a * (x - 1.0) ** 2 * (1.0 + y) / x
                + a * (y - 1.0) ** 2 * (x + 1.0) / y)
    ib, iv = orbit_integrals(orbit, [b_int, var_int])
    return ib / orbit.period_tau, math.sqrt(iv / orbit.period_tau)


@dataclass
class HDiffusionTable:
    """Tabulated averaged coefficients and the unnormalized stationary
    density, referenced to h_ref (pss(h_ref) = A(h_ref)^-2)."""

    alpha: float
    h_grid: np.ndarray
    b_values: np.ndarray
    a_values: np.ndarray
    pss_values: np.ndarray
    h_ref: float
    mode: str


def default_h_grid(params: ModelParams, n: int = 64):
    """Logarithmic offsets above h_min in [1e-3, 10]: resolves both the
    A -> 0 edge and the growing tail."""
    return params.h_min() + np.logspace(-3, 1, n)


def pss_curve(params: ModelParams, h_grid=None, h_ref: float = None,
              mode: str = "amplitude", tol: float = DEFAULT_TOL,
              workers: int = 1) -> HDiffusionTable:
    """Tabulate b, A on the grid and integrate 2b/A^2 by the trapezoid rule
    (relative to h_ref) for the unnormalized stationary density.

    Grid points where A underflows (expected near h = alpha + 1) are dropped
    with a warning.  The density is reported unnormalized: it is not
    normalizable on [h_min, infinity).
    """
    if h_grid is None:
        h_grid = default_h_grid(params)
    h_grid = np.asarray(h_grid, dtype=float)
    if np.any(h_grid <= params.h_min()):
        raise EnergyBelowMinimum("grid points must exceed alpha + 1")
    if h_ref is None:
        h_ref = params.h_min() + 1.0

    def coeffs(h):
        return averaged_coefficients(h, params, mode=mode, tol=tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            pairs = list(ex.map(coeffs, h_grid))
    else:
        pairs = [coeffs(h) for h in h_grid]
    b = np.array([p[0] for p in pairs])
    a = np.array([p[1] for p in pairs])

    keep = a > A_FLOOR
    if not np.all(keep):
        warnings.warn(f"dropping {np.count_nonzero(~keep)} grid points with "
                      "singular noise coefficient near h_min")
    hg, b, a = h_grid[keep], b[keep], a[keep]
    if not (hg[0] <= h_ref <= hg[-1]):
        raise ValueError("h_ref outside the (kept) grid range")

    integrand = 2.0 * b / a**2
    cum = np.concatenate(
        [[0.0], np.cumsum(np.diff(hg) * 0.5 * (integrand[1:] + integrand[:-1]))])
    cum -= np.interp(h_ref, hg, cum)  # zero the integral at h_ref
    pss = np.exp(cum) / a**2
    return HDiffusionTable(alpha=params.alpha, h_grid=hg, b_values=b,
                           a_values=a, pss_values=pss, h_ref=h_ref, mode=mode)


def h_path_extract(path, params: ModelParams):
    """Map an SDE path to the energy coordinate: [(t, H(x(t), y(t))), ...]."""
    hs = hamiltonian((path.x, path.y), params)
    return list(zip(path.times.tolist(), np.asarray(hs).tolist()))
