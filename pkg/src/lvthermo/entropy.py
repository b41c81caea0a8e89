"""Phase-space density transport and entropy conservation checks.

The transport equation for a density u(x, y, t) carried by the LV flow has
stationary solutions rho(H(x, y)) / G(x, y) for any differentiable rho.  The
ratio w = u / (rho(H)/G) is constant along characteristics, so generalized
relative entropies

    S[u] = int_D u * Psi( u / (G^-1 rho(H)) ) dx dy

are computed here by backward-characteristic pullback of w, turning the PDE
statement into ODE quadrature: on a flow-invariant domain (a sublevel set
H <= h) S is conserved exactly, and the quadrature error is the only error.
"""

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .core import DEFAULT_TOL, ModelParams, orbit_from_energy
from .errors import DomainLeakWarning, EnergyBelowMinimum, StepSizeUnderflow
from .orbits import orbit_integrals


def _safe_log(w):
    return np.log(np.where(w > 0, w, 1.0))


def _phi_shannon(w):
    # w * ln(w), continuously extended by 0 at w = 0
    w = np.asarray(w, dtype=float)
    return np.where(w > 0, w * _safe_log(w), 0.0)


def _phi_zlnz(w):
    # w * Psi(w) with Psi(z) = z ln z
    w = np.asarray(w, dtype=float)
    return np.where(w > 0, w**2 * _safe_log(w), 0.0)


def _phi_one(w):
    return np.asarray(w, dtype=float)


_PSI_MODES = {"shannon": _phi_shannon, "zlnz": _phi_zlnz, "one": _phi_one}


def _w_times_psi(psi_mode):
    """Return phi(w) = w * Psi(w) for a named mode or a user Psi callable."""
    if callable(psi_mode):
        return lambda w: np.asarray(w, dtype=float) * psi_mode(w)
    try:
        return _PSI_MODES[psi_mode]
    except KeyError:
        raise ValueError(
            f"psi_mode must be callable or one of {sorted(_PSI_MODES)}")


@dataclass
class DensityField:
    """Initial density data expressed through the ratio w0 = u0/(G^-1 rho(H)).

    domain: bounding rectangle (xmin, xmax, ymin, ymax), positive bounds.
    h_level: if set, quadrature nodes are restricted to the flow-invariant
    sublevel set H <= h_level (nodes outside contribute zero).
    """

    w0: Callable
    rho: Callable
    domain: tuple
    quadrature_n: int = 64
    h_level: Optional[float] = None


def stationary_divergence(state, params: ModelParams, rho, rho_prime,
                          method: str = "analytic", fd_step: float = 1e-5):
    """div( f * rho(H)/G, g * rho(H)/G ) at one point.

    Zero for every differentiable rho: this is the stationarity of
    rho(H)/G under the transport flow.  "analytic" sums the six product-rule
    terms without simplification (cancellation happens in floating point);
    "numeric" central-differences the two flux components.
    """
    x, y = state
    a = params.alpha

    if method == "numeric":
        def flux_x(xx, yy):
            return xx * (1.0 - yy) * rho(a * xx + yy - a * np.log(xx)
                                         - np.log(yy)) / (xx * yy)

        def flux_y(xx, yy):
            return a * yy * (xx - 1.0) * rho(a * xx + yy - a * np.log(xx)
                                             - np.log(yy)) / (xx * yy)

        hx = fd_step * max(1.0, abs(x))
        hy = fd_step * max(1.0, abs(y))
        return ((flux_x(x + hx, y) - flux_x(x - hx, y)) / (2 * hx)
                + (flux_y(x, y + hy) - flux_y(x, y - hy)) / (2 * hy))

    if method != "analytic":
        raise ValueError("method must be 'analytic' or 'numeric'")

    H = a * x + y - a * np.log(x) - np.log(y)
    r = rho(H)
    rp = rho_prime(H)
    f = x * (1.0 - y)
    g = a * y * (x - 1.0)
    ginv = 1.0 / (x * y)
    # d/dx [f * ginv * rho(H)] + d/dy [g * ginv * rho(H)], product rule
    t1 = (1.0 - y) * ginv * r                  # f_x term
    t2 = f * (-1.0 / (x * x * y)) * r          # d(ginv)/dx term
    t3 = f * ginv * rp * a * (1.0 - 1.0 / x)   # rho'(H) H_x term
    t4 = a * (x - 1.0) * ginv * r              # g_y term
    t5 = g * (-1.0 / (x * y * y)) * r          # d(ginv)/dy term
    t6 = g * ginv * rp * (1.0 - 1.0 / y)       # rho'(H) H_y term
    return t1 + t2 + t3 + t4 + t5 + t6


def _gauss_legendre_nodes(field: DensityField):
    xmin, xmax, ymin, ymax = field.domain
    n = field.quadrature_n
    nodes, wts = np.polynomial.legendre.leggauss(n)
    xs = 0.5 * (xmax - xmin) * nodes + 0.5 * (xmax + xmin)
    ys = 0.5 * (ymax - ymin) * nodes + 0.5 * (ymax + ymin)
    wx = 0.5 * (xmax - xmin) * wts
    wy = 0.5 * (ymax - ymin) * wts
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    W = np.outer(wx, wy)
    return X.ravel(), Y.ravel(), W.ravel()


def _pullback(xs, ys, params: ModelParams, t: float, tol: float):
    """Pre-images of the points under the flow: integrate backward for t."""
    a = params.alpha

    def rhs(s, z):
        half = z.size // 2
        x = z[:half]
        y = z[half:]
        return np.concatenate([-x * (1.0 - y), -a * y * (x - 1.0)])

    z0 = np.concatenate([xs, ys])
    res = solve_ivp(rhs, (0.0, t), z0, method="DOP853", rtol=tol,
                    atol=tol * 1e-2)
    if res.status != 0:
        raise StepSizeUnderflow(res.message)
    zt = res.y[:, -1]
    half = zt.size // 2
    return zt[:half], zt[half:]


def relative_entropy_at_time(field: DensityField, params: ModelParams,
                             t: float, psi_mode="shannon",
                             tol: float = DEFAULT_TOL) -> float:
    """int_D u(.,t) Psi( u/(G^-1 rho(H)) ) dx dy by characteristic pullback.

    u(x, y, t) = G^-1 rho(H) * w0(pre-image), so the integrand is
    G^-1 rho(H) * phi(w0(pre-image)) with phi(w) = w Psi(w); tensor-product
    Gauss-Legendre quadrature over the domain (restricted to H <= h_level
    when set).  Warns (DomainLeakWarning) if pre-images leave the declared
    rectangle, which invalidates conservation comparisons.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    a = params.alpha
    phi = _w_times_psi(psi_mode)
    X, Y, W = _gauss_legendre_nodes(field)
    H = a * X + Y - a * np.log(X) - np.log(Y)
    if field.h_level is not None:
        keep = H <= field.h_level
        X, Y, W, H = X[keep], Y[keep], W[keep], H[keep]
    if X.size == 0:
        return 0.0
    if t > 0:
        Xp, Yp = _pullback(X, Y, params, t, tol)
    else:
        Xp, Yp = X, Y
    xmin, xmax, ymin, ymax = field.domain
    if (Xp.min() < xmin or Xp.max() > xmax or Yp.min() < ymin
            or Yp.max() > ymax):
        warnings.warn("backward characteristics left the declared domain",
                      DomainLeakWarning)
    w = np.asarray(field.w0(Xp, Yp), dtype=float)
    integrand = field.rho(H) / (X * Y) * phi(w)
    return float(np.sum(W * integrand))


def boltzmann_entropy_density(params: ModelParams, h: float, w0=None,
                              psi_mode="one", tol: float = DEFAULT_TOL) -> float:
    """Orbit integral int_0^tau w0 Psi(w0) dt on the level curve at h
    (the invariant measure restricted to the curve is dt).

    With w0 = 1 and Psi = 1 this is the period tau = dA/dh, the density of
    states.
    """
    if h <= params.h_min():
        raise EnergyBelowMinimum(f"h = {h} <= h_min = {params.h_min()}")
    phi = _w_times_psi(psi_mode)
    if w0 is None:
        w0 = lambda x, y: 1.0
    orbit = orbit_from_energy(h, params, tol)
    (val,) = orbit_integrals(orbit, [lambda x, y: float(phi(w0(x, y)))])
    return val
