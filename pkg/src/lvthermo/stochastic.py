"""Finite-population stochastic dynamics.

Exact birth-death simulation (SSA), Euler-Maruyama for the diffusion limit,
the stationarity check for the discrete invariant measure 1/(mn), and the
potential-current decomposition's deterministic drift with its fixed-point
eigenvalues.

RNG policy: one 64-bit seed; path i draws from Philox(key=seed).jumped(i),
a counter-based splittable stream, so ensembles are reproducible and safe to
run concurrently.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .core import ModelParams, vector_field
from .errors import BoundaryState, FixedPointNotFound


def path_rng(seed: int, path_index: int = 0) -> np.random.Generator:
    """Independent counter-based stream for one path of an ensemble."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(path_index))


@dataclass
class DiscreteState:
    """Integer populations with system size Omega; densities are m/Omega,
    n/Omega."""

    m: int
    n: int
    omega: float

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("populations must be nonnegative")
        if self.omega <= 0:
            raise ValueError("omega must be positive")


def ssa_rates(state: DiscreteState, params: ModelParams):
    """(prey birth, prey death, predator birth, predator death) =
    (m, m*n/Omega, alpha*n*m/Omega, alpha*n)."""
    m, n, om = state.m, state.n, state.omega
    a = params.alpha
    return (float(m), m * n / om, a * n * m / om, a * n)


@dataclass
class JumpPath:
    """One SSA realization: the state after each jump (first entry is the
    initial state).  Consecutive states differ by one unit in one
    coordinate."""

    times: np.ndarray
    m: np.ndarray
    n: np.ndarray
    omega: float
    params: ModelParams
    seed: int
    path_index: int
    t_max: float

    @property
    def extinct(self) -> bool:
        return self.m[-1] == 0 and self.n[-1] == 0

    def densities(self):
        """(x, y) = (m, n) / Omega as float arrays."""
        return self.m / self.omega, self.n / self.omega

    def state_at(self, t: float):
        """(m, n) just after the last jump at or before time t."""
        i = np.searchsorted(self.times, t, side="right") - 1
        return int(self.m[i]), int(self.n[i])


def ssa_simulate(start: DiscreteState, params: ModelParams, t_max: float,
                 seed: int, path_index: int = 0) -> JumpPath:
    """Exact stochastic simulation by the direct (two-uniform) method.

    Terminates at t_max, or immediately once m = n = 0 (extinction is a
    valid outcome).  Identical seed and path_index give an identical path.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    rng = path_rng(seed, path_index)
    ts, ms, ns = kernels.ssa_chain(start.m, start.n, start.omega,
                                   params.alpha, t_max, rng)
    return JumpPath(times=ts, m=ms, n=ns, omega=start.omega, params=params,
                    seed=seed, path_index=path_index, t_max=t_max)


def master_stationarity_residual(state: DiscreteState,
                                 params: ModelParams) -> float:
    """Inflow minus outflow of the stationary master equation at an interior
    state, evaluated with p(m, n) = 1/(mn).

    Algebraically zero: inflow = 1/n + 1/Omega + alpha/Omega + alpha/m =
    outflow.  The value returned is the floating-point residual of the
    unsimplified balance.
    """
    m, n, om = state.m, state.n, state.omega
    a = params.alpha
    if m < 2 or n < 2:
        raise BoundaryState(f"interior states need m, n >= 2, got {(m, n)}")

    def p(i, j):
        return 1.0 / (i * j)

    inflow = ((m - 1) * p(m - 1, n)
              + ((m + 1) * n / om) * p(m + 1, n)
              + (a * (n - 1) * m / om) * p(m, n - 1)
              + (a * (n + 1)) * p(m, n + 1))
    outflow = (m + m * n / om + a * n * m / om + a * n) * p(m, n)
    return inflow - outflow


@dataclass
class SdePath:
    """Euler-Maruyama sample path in density coordinates."""

    times: np.ndarray
    x: np.ndarray
    y: np.ndarray
    epsilon: float
    dt: float
    params: ModelParams
    seed: int
    path_index: int


def sde_simulate(start, params: ModelParams, epsilon: float, dt: float,
                 t_max: float, seed: int, path_index: int = 0,
                 record_every: int = 1) -> SdePath:
    """Euler-Maruyama for the Ito SDE

        dX = X(1-Y) dt + sqrt(eps X(1+Y)) dW1
        dY = alpha Y(X-1) dt + sqrt(eps alpha Y(X+1)) dW2

    with positivity kept by reject-and-resample, then local step halving
    (StepRejectionLimit if that fails).  epsilon = 0 reproduces the
    deterministic flow to O(dt) without consuming random numbers.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if dt <= 0:
        raise ValueError("dt must be positive")
    rng = path_rng(seed, path_index)
    ts, xs, ys = kernels.em_chain(start[0], start[1], params.alpha, epsilon,
                                  dt, t_max, record_every, rng)
    return SdePath(times=ts, x=xs, y=ys, epsilon=epsilon, dt=dt,
                   params=params, seed=seed, path_index=path_index)


def decomposition_drift(state, params: ModelParams, epsilon: float):
    """Deterministic part of the potential-current decomposition:

        -eps * D grad(ln G) + G * (-H_y, H_x)

    with D = diag(x(1+y), alpha*y(x+1))/2 and grad(ln G) = (1/x, 1/y).
    The second term is the LV vector field, so epsilon = 0 recovers it.
    """
    x, y = state
    a = params.alpha
    fx, fy = vector_field(state, params)
    return (fx - epsilon * 0.5 * (1.0 + y),
            fy - epsilon * 0.5 * a * (x + 1.0))


def find_drift_fixed_point(params: ModelParams, epsilon: float,
                           max_iter: int = 50, tol: float = 1e-13):
    """Zero of decomposition_drift near (1 + eps, 1 - eps), by damped Newton
    with a finite-difference Jacobian."""
    z = np.array([1.0 + epsilon, 1.0 - epsilon])
    for _ in range(max_iter):
        f = np.array(decomposition_drift(z, params, epsilon))
        if np.max(np.abs(f)) < tol:
            return tuple(z)
        J = _numeric_jacobian(z, params, epsilon)
        try:
            step = np.linalg.solve(J, f)
        except np.linalg.LinAlgError as exc:
            raise FixedPointNotFound(str(exc)) from exc
        z = z - step
        if z[0] <= 0 or z[1] <= 0:
            raise FixedPointNotFound(f"iterate left the positive quadrant: {z}")
    raise FixedPointNotFound("Newton did not converge")


def _numeric_jacobian(z, params: ModelParams, epsilon: float,
                      step: float = 1e-6):
    J = np.empty((2, 2))
    for j in range(2):
        zp = np.array(z, dtype=float)
        zm = np.array(z, dtype=float)
        zp[j] += step
        zm[j] -= step
        fp = decomposition_drift(zp, params, epsilon)
        fm = decomposition_drift(zm, params, epsilon)
        J[0, j] = (fp[0] - fm[0]) / (2.0 * step)
        J[1, j] = (fp[1] - fm[1]) / (2.0 * step)
    return J


def fixed_point_eigenvalues(params: ModelParams, epsilon: float):
    """Eigenvalues of the drift Jacobian at its located fixed point.

    Matches +/- i sqrt(alpha) + eps (alpha+1)/2 up to O(eps^2).  Uses the
    closed form for a 2x2 characteristic polynomial; eigenvalue with positive
    imaginary part first.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    z = find_drift_fixed_point(params, epsilon)
    J = _numeric_jacobian(np.asarray(z), params, epsilon)
    tr = J[0, 0] + J[1, 1]
    det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
    disc = cmath.sqrt(complex(tr * tr - 4.0 * det))
    lam1 = (tr + disc) / 2.0
    lam2 = (tr - disc) / 2.0
    if lam1.imag >= lam2.imag:
        return (lam1, lam2)
    return (lam2, lam1)
