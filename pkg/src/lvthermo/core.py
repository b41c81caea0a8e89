"""Deterministic Lotka-Volterra dynamics.

The nondimensional predator-prey system

    dx/dt = x(1 - y),   dy/dt = alpha * y(x - 1)

conserves the energy-like function H(x,y) = alpha*x + y - alpha*ln(x) - ln(y),
whose closed level curves are the orbits.  This module constructs orbits from
an energy value h and a coupling ratio alpha: seed point on the Poincare
section {y = 1, x > 1}, adaptive integration with dense output, and period
detection by event location.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import EnergyBelowMinimum, PeriodNotFound, StepSizeUnderflow

# Energy drift of the integrator is bounded by DRIFT_CONSTANT * tol per unit
# time (empirically much better for DOP853; this constant is the contract).
DRIFT_CONSTANT = 100.0

# Period search gives up after PERIOD_CAP_FACTOR small-oscillation periods.
PERIOD_CAP_FACTOR = 100.0

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """The single model parameter alpha (> 0)."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def h_min(self) -> float:
        """Energy of the fixed point (1, 1); orbits exist for h > h_min."""
        return self.alpha + 1.0


def hamiltonian(state, params: ModelParams) -> float:
    """H(x, y) = alpha*x + y - alpha*ln(x) - ln(y)."""
    x, y = state
    a = params.alpha
    return a * x + y - a * np.log(x) - np.log(y)


def vector_field(state, params: ModelParams):
    """(dx/dt, dy/dt) = (x(1 - y), alpha*y(x - 1))."""
    x, y = state
    return (x * (1.0 - y), params.alpha * y * (x - 1.0))


def scalar_factor(state) -> float:
    """G(x, y) = x*y, the local change of measure relating the flow to a
    Hamiltonian one; 1/G is the invariant density."""
    x, y = state
    return x * y


def _rhs(t, z, alpha):
    x, y = z
    return (x * (1.0 - y), alpha * y * (x - 1.0))


@dataclass
class Trajectory:
    """Sampled solution with the dense interpolants that produced it."""

    t: np.ndarray
    states: np.ndarray  # shape (n, 2)
    tol: float
    sols: list = field(default_factory=list, repr=False)  # OdeSolution pieces

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.states = np.asarray(self.states, dtype=float)

    def at(self, t):
        """Evaluate the dense solution at time(s) t."""
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        tq = np.atleast_1d(t)
        out = np.empty((tq.size, 2))
        for i, ti in enumerate(tq):
            for sol in self.sols:
                if sol.t_min - 1e-12 <= ti <= sol.t_max + 1e-12:
                    out[i] = sol(np.clip(ti, sol.t_min, sol.t_max))
                    break
            else:
                raise ValueError(f"time {ti} outside trajectory range")
        return out[0] if scalar else out


def integrate(start, params: ModelParams, t_end: float, tol: float = DEFAULT_TOL,
              n_samples: int = 512) -> Trajectory:
    """Integrate the LV flow from `start` over [0, t_end].

    Uses an adaptive embedded Runge-Kutta pair (DOP853) with dense output.
    Energy drift per unit time is bounded by DRIFT_CONSTANT * tol.
    """
    if not (0 < tol <= 1e-3):
        raise ValueError("tol must be in (0, 1e-3]")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    res = solve_ivp(_rhs, (0.0, t_end), np.asarray(start, dtype=float),
                    method="DOP853", rtol=tol, atol=tol * 1e-2,
                    dense_output=True, args=(params.alpha,))
    if res.status == -1:
        raise StepSizeUnderflow(res.message)
    ts = np.linspace(0.0, t_end, n_samples)
    traj = Trajectory(t=ts, states=res.sol(ts).T, tol=tol, sols=[res.sol])
    return traj


def seed_point(h: float, params: ModelParams):
    """Point (x, 1) with x > 1 and H(x, 1) = h, on the Poincare section.

    Solves phi(x) = alpha*(x - ln x) - (h - 1) = 0 on the branch x > 1,
    where phi is strictly increasing, by bracketed root-finding.
    """
    a = params.alpha
    if h <= params.h_min():
        raise EnergyBelowMinimum(f"h = {h} <= h_min = {params.h_min()}")

    def phi(x):
        return a * (x - np.log(x)) - (h - 1.0)

    hi = 2.0
    while phi(hi) <= 0:
        hi *= 2.0
        if hi > 1e300:  # pragma: no cover
            raise PeriodNotFound("seed bracket growth failed")
    x = brentq(phi, 1.0 + 1e-14, hi, xtol=1e-15, rtol=8.9e-16)
    # one Newton polish; phi'(x) = alpha (1 - 1/x)
    d = a * (1.0 - 1.0 / x)
    if d > 0:
        x -= phi(x) / d
    return (x, 1.0)


@dataclass
class Orbit:
    """One closed orbit Gamma_{H=h}: period, seed on the section y = 1 (x > 1),
    and a dense trajectory covering exactly one period."""

    params: ModelParams
    h: float
    period_tau: float
    dense: Trajectory
    seed: tuple

    @property
    def tol(self) -> float:
        return self.dense.tol


def orbit_from_energy(h: float, params: ModelParams, tol: float = DEFAULT_TOL,
                      n_samples: int = 1024) -> Orbit:
    """Construct the orbit at energy h by integrating from the seed point
    until the next upward crossing of the section {y = 1, x > 1}.

    The crossing is located in two phases (first the downward crossing at
    x < 1, then the upward return) so the t = 0 section point cannot trigger
    the event.  Time cap: PERIOD_CAP_FACTOR * 2*pi/sqrt(alpha).
    """
    a = params.alpha
    x0 = seed_point(h, params)  # raises EnergyBelowMinimum
    t_cap = PERIOD_CAP_FACTOR * 2.0 * np.pi / np.sqrt(a)

    def section(t, z, alpha):
        return z[1] - 1.0

    down = lambda t, z, alpha: section(t, z, alpha)
    down.terminal = True
    down.direction = -1.0
    up = lambda t, z, alpha: section(t, z, alpha)
    up.terminal = True
    up.direction = 1.0

    kw = dict(method="DOP853", rtol=tol, atol=tol * 1e-2,
              dense_output=True, args=(a,))
    r1 = solve_ivp(_rhs, (0.0, t_cap), np.asarray(x0, dtype=float),
                   events=down, **kw)
    if r1.status == -1:
        raise StepSizeUnderflow(r1.message)
    if not r1.t_events[0].size:
        raise PeriodNotFound(f"no downward section crossing within {t_cap}")
    t_half = r1.t_events[0][0]
    z_half = r1.y_events[0][0]

    r2 = solve_ivp(_rhs, (t_half, t_cap), z_half, events=up, **kw)
    if r2.status == -1:
        raise StepSizeUnderflow(r2.message)
    if not r2.t_events[0].size:
        raise PeriodNotFound(f"no upward return within {t_cap}")
    tau = r2.t_events[0][0]

    ts = np.linspace(0.0, tau, n_samples)
    states = np.empty((n_samples, 2))
    m1 = ts <= t_half
    states[m1] = r1.sol(ts[m1]).T
    states[~m1] = r2.sol(ts[~m1]).T
    traj = Trajectory(t=ts, states=states, tol=tol, sols=[r1.sol, r2.sol])
    return Orbit(params=params, h=h, period_tau=tau, dense=traj, seed=x0)
