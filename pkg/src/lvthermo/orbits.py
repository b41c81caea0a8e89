"""Time averages and state variables on a single orbit.

Averages with respect to the projected invariant measure on a level curve
equal plain time averages over one period, so every per-orbit quantity is an
integral of the form (1/tau) * int_0^tau psi(x(t), y(t)) dt.  All such
integrals are computed by augmenting the ODE with accumulator states and
re-integrating over one period, so they inherit the solver's error control.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .core import ModelParams, Orbit, seed_point
from .errors import EnergyBelowMinimum, StepSizeUnderflow


def orbit_integrals(orbit: Orbit, integrands, tol: float = None) -> np.ndarray:
    """int_0^tau f_i(x(t), y(t)) dt for each integrand, in one augmented pass.

    integrands: sequence of callables f(x, y) -> float (vectorized or not).
    """
    a = orbit.params.alpha
    n = len(integrands)
    if tol is None:
        tol = orbit.tol

    def rhs(t, z):
        x, y = z[0], z[1]
        out = np.empty(2 + n)
        out[0] = x * (1.0 - y)
        out[1] = a * y * (x - 1.0)
        for i, f in enumerate(integrands):
            out[2 + i] = f(x, y)
        return out

    z0 = np.concatenate([np.asarray(orbit.seed, dtype=float), np.zeros(n)])
    res = solve_ivp(rhs, (0.0, orbit.period_tau), z0, method="DOP853",
                    rtol=tol, atol=tol * 1e-2)
    if res.status == -1:
        raise StepSizeUnderflow(res.message)
    return res.y[2:, -1]


def time_average(orbit: Orbit, integrand, tol: float = None) -> float:
    """(1/tau) * int_0^tau psi(x(t), y(t)) dt."""
    (val,) = orbit_integrals(orbit, [integrand], tol=tol)
    return val / orbit.period_tau


@dataclass
class OrbitSummary:
    """Per-orbit state variables.

    area_invariant is the area of the enclosed region under the invariant
    measure dx dy / (xy) (equivalently Lebesgue area in (ln x, ln y));
    area_lebesgue is the plain xy-plane area.  theta_x and theta_y are the
    two line-integral forms of the activeness theta and agree analytically.
    """

    h: float
    alpha: float
    tau: float
    mean_x: float
    mean_y: float
    var_x: float
    var_y: float
    area_invariant: float
    area_lebesgue: float
    theta_x: float
    theta_y: float
    f_alpha: float
    dA_dalpha: float


def summarize(orbit: Orbit, tol: float = None) -> OrbitSummary:
    """All per-orbit state variables from a single augmented integration.

    Green's theorem turns the two area integrals into line integrals along
    the orbit: the invariant-measure area is int ln(y)(y-1) dt (equivalently
    int alpha*ln(x)(x-1) dt, recovered as theta_x * tau), and the Lebesgue
    area is the loop integral of x dy = int x * alpha*y(x-1) dt.
    """
    a = orbit.params.alpha
    integrands = [
        lambda x, y: x,
        lambda x, y: y,
        lambda x, y: (x - 1.0) ** 2,
        lambda x, y: (y - 1.0) ** 2,
        lambda x, y: np.log(y) * (y - 1.0),
        lambda x, y: a * np.log(x) * (x - 1.0),
        lambda x, y: x * a * y * (x - 1.0),
        lambda x, y: x - np.log(x),
    ]
    ix, iy, ivx, ivy, iay, iax, ileb, ixl = orbit_integrals(
        orbit, integrands, tol=tol)
    tau = orbit.period_tau
    return OrbitSummary(
        h=orbit.h,
        alpha=a,
        tau=tau,
        mean_x=ix / tau,
        mean_y=iy / tau,
        var_x=ivx / tau,
        var_y=ivy / tau,
        area_invariant=iay,
        area_lebesgue=ileb,
        theta_x=iax / tau,
        theta_y=iay / tau,
        f_alpha=-ixl / tau,
        dA_dalpha=-ixl,
    )


def orbit_extents(h: float, params: ModelParams):
    """(x_lo, x_hi, y_lo, y_hi) of the level curve H = h, by root-finding on
    the axes through the fixed point (independent of any ODE solve)."""
    a = params.alpha
    if h <= params.h_min():
        raise EnergyBelowMinimum(f"h = {h} <= h_min = {params.h_min()}")

    def phix(x):  # H(x, 1) - h
        return a * (x - np.log(x)) - (h - 1.0)

    def phiy(y):  # H(1, y) - h
        return (y - np.log(y)) - (h - a)

    def solve_branch(phi, lo_side):
        if lo_side:
            lo = 1.0
            while phi(lo) <= 0:
                lo /= 2.0
            return brentq(phi, lo, 1.0 - 1e-15, xtol=1e-15)
        hi = 2.0
        while phi(hi) <= 0:
            hi *= 2.0
        return brentq(phi, 1.0 + 1e-15, hi, xtol=1e-15)

    return (solve_branch(phix, True), solve_branch(phix, False),
            solve_branch(phiy, True), solve_branch(phiy, False))


def area_invariant_direct(h: float, params: ModelParams,
                          grid_n: int = 256) -> float:
    """Invariant-measure area by 2-D indicator quadrature in (ln x, ln y).

    Midpoint rule on a bounding box padded by 0.5 beyond the level-curve
    extremes.  Deliberately independent of the orbit integrator; used as an
    oracle for OrbitSummary.area_invariant.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be >= 64")
    a = params.alpha
    x_lo, x_hi, y_lo, y_hi = orbit_extents(h, params)
    p_lo, p_hi = np.log(x_lo) - 0.5, np.log(x_hi) + 0.5
    q_lo, q_hi = np.log(y_lo) - 0.5, np.log(y_hi) + 0.5
    p = p_lo + (np.arange(grid_n) + 0.5) * (p_hi - p_lo) / grid_n
    q = q_lo + (np.arange(grid_n) + 0.5) * (q_hi - q_lo) / grid_n
    P, Q = np.meshgrid(p, q, indexing="ij")
    H = a * np.exp(P) + np.exp(Q) - a * P - Q
    cell = (p_hi - p_lo) * (q_hi - q_lo) / grid_n**2
    return float(np.count_nonzero(H <= h)) * cell
