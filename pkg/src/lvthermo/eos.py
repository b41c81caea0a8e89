"""Cross-orbit structure: derivatives of the area function A(h, alpha),
the extended conservation relation dh = theta dlnA - F_alpha dalpha, and
equation-of-state table generation."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import DEFAULT_TOL, ModelParams, orbit_from_energy
from .errors import EnergyBelowMinimum, LvError
from .orbits import summarize


def area_invariant(h: float, params: ModelParams,
                   tol: float = DEFAULT_TOL) -> float:
    """A(h, alpha): invariant-measure area enclosed by the orbit at h."""
    return summarize(orbit_from_energy(h, params, tol)).area_invariant


def _default_step(h: float) -> float:
    return 1e-4 * max(1.0, abs(h))


def dA_dh(h: float, params: ModelParams, step: float = None,
          tol: float = DEFAULT_TOL, richardson: bool = True) -> float:
    """(dA/dh) at fixed alpha by central differences, one Richardson level.

    Analytically equals the period tau(h, alpha); the acceptance suite checks
    this against the event-located period.
    """
    if step is None:
        step = _default_step(h)
    if h - step <= params.h_min():
        raise EnergyBelowMinimum(
            f"h - step = {h - step} <= h_min = {params.h_min()}")

    def central(s):
        return (area_invariant(h + s, params, tol)
                - area_invariant(h - s, params, tol)) / (2.0 * s)

    d1 = central(step)
    if not richardson:
        return d1
    d2 = central(step / 2.0)
    return (4.0 * d2 - d1) / 3.0


def dA_dalpha(h: float, params: ModelParams, step: float = None,
              tol: float = DEFAULT_TOL, richardson: bool = True) -> float:
    """(dA/dalpha) at fixed h by central differences.

    Each evaluation re-solves the seed point at the perturbed alpha, so h is
    held fixed numerically (not the initial condition).
    """
    if step is None:
        step = 1e-4 * max(1.0, params.alpha)
    if h <= ModelParams(params.alpha + step).h_min():
        raise EnergyBelowMinimum(
            f"h = {h} <= h_min at alpha + step = {params.alpha + step}")

    def central(s):
        ap = ModelParams(params.alpha + s)
        am = ModelParams(params.alpha - s)
        return (area_invariant(h, ap, tol)
                - area_invariant(h, am, tol)) / (2.0 * s)

    d1 = central(step)
    if not richardson:
        return d1
    d2 = central(step / 2.0)
    return (4.0 * d2 - d1) / 3.0


def theta_fn(h: float, params: ModelParams, tol: float = DEFAULT_TOL) -> float:
    """Activeness theta(h, alpha) = <(y-1) ln y> over the orbit.

    Equals A / (dA/dh) by the Green's theorem identities.
    """
    return summarize(orbit_from_energy(h, params, tol)).theta_y


def f_alpha_fn(h: float, params: ModelParams,
               tol: float = DEFAULT_TOL) -> float:
    """Force conjugate to alpha: F_alpha = -<x - ln x> (<= -1)."""
    return summarize(orbit_from_energy(h, params, tol)).f_alpha


@dataclass
class HelmholtzResidual:
    dh_actual: float
    dh_predicted: float
    residual: float
    step_h: float
    step_alpha: float


def helmholtz_residual(h: float, params: ModelParams, d_h: float,
                       d_alpha: float,
                       tol: float = DEFAULT_TOL) -> HelmholtzResidual:
    """Residual of dh = theta * dlnA - F_alpha * dalpha between the states
    (h, alpha) and (h + d_h, alpha + d_alpha).

    The residual is the second-order Taylor remainder: it falls ~4x when both
    steps are halved.
    """
    base = summarize(orbit_from_energy(h, params, tol))
    pert = summarize(orbit_from_energy(
        h + d_h, ModelParams(params.alpha + d_alpha), tol))
    dln_area = math.log(pert.area_invariant) - math.log(base.area_invariant)
    dh_pred = base.theta_y * dln_area - base.f_alpha * d_alpha
    return HelmholtzResidual(dh_actual=d_h, dh_predicted=dh_pred,
                             residual=d_h - dh_pred,
                             step_h=d_h, step_alpha=d_alpha)


@dataclass
class EosRecord:
    """One row of the equation-of-state table; `error` is set (and the
    numeric fields are NaN) if the cell failed."""

    alpha: float
    h: float
    tau: float
    area_A: float
    ln_area: float
    theta: float
    f_alpha_abs: float
    area_lebesgue: float
    error: str = None


def _eos_cell(alpha: float, h: float, tol: float) -> EosRecord:
    try:
        s = summarize(orbit_from_energy(h, ModelParams(alpha), tol))
        return EosRecord(alpha=alpha, h=h, tau=s.tau, area_A=s.area_invariant,
                         ln_area=math.log(s.area_invariant), theta=s.theta_y,
                         f_alpha_abs=-s.f_alpha,
                         area_lebesgue=s.area_lebesgue)
    except LvError as exc:
        nan = float("nan")
        return EosRecord(alpha=alpha, h=h, tau=nan, area_A=nan, ln_area=nan,
                         theta=nan, f_alpha_abs=nan, area_lebesgue=nan,
                         error=type(exc).__name__)


DEFAULT_ALPHAS = (0.5, 0.6, 0.8, 1.0, 1.2)


def default_offsets(n: int = 12):
    """Logarithmically spaced energy offsets above h_min, spanning the
    near-fixed-point and order-unity regimes."""
    import numpy as np
    return list(np.logspace(-2, math.log10(2.0), n))


def eos_grid(alpha_list, h_offsets, tol: float = DEFAULT_TOL,
             workers: int = 1):
    """EosRecord per (alpha, h_min + offset) pair, alpha-major ordering.

    Cell failures become error rows; the grid never aborts.  Cells are
    independent, so `workers > 1` evaluates them concurrently while keeping
    the deterministic output order.
    """
    cells = [(a, ModelParams(a).h_min() + off)
             for a in alpha_list for off in h_offsets]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(lambda c: _eos_cell(c[0], c[1], tol), cells))
    return [_eos_cell(a, h, tol) for a, h in cells]
