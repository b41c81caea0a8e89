"""The invariant suite behind the `check` CLI subcommand.

Each check function returns a CheckResult; `run_checks` executes a selection
and reports one pass/fail line per criterion.  The same functions back the
acceptance tests, so `lvthermo check` and `pytest tests/test_acceptance.py`
exercise identical code paths.

One check is expected to fail and is marked `documented_defect=True`:
"variance-identities-alpha-squared" asserts the variant of the variance
identities in which the time integral of (y-1)^2 equals alpha times the
Lebesgue area (so var_y/var_x = alpha^2).  Direct derivation and the
harmonic small-oscillation limit both give the integral without the alpha
factor (ratio alpha, not alpha^2), so that variant holds only at alpha = 1;
it is kept verbatim, expected red, to document the discrepancy.  The
correct identities are asserted by "variance-identities-corrected".

By default the defect row does not affect the process exit code; pass
strict=True to make it count.
"""

import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (ModelParams, hamiltonian, integrate, orbit_from_energy,
                   seed_point)
from .eos import dA_dh, helmholtz_residual
from .entropy import (DensityField, relative_entropy_at_time,
                      stationary_divergence)
from .hdiffusion import averaged_coefficients, pss_curve
from .orbits import orbit_extents, summarize
from .stochastic import (DiscreteState, fixed_point_eigenvalues,
                         master_stationarity_residual, path_rng,
                         sde_simulate, ssa_simulate)

TOL = 1e-10  # integration tolerance used throughout the suite

ALPHA_GRID = (0.5, 1.0, 2.0)
OFFSET_GRID = (0.1, 1.0, 2.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    documented_defect: bool = False


_summaries = {}
_orbits = {}


def _orbit(alpha, h):
    key = (alpha, h)
    if key not in _orbits:
        _orbits[key] = orbit_from_energy(h, ModelParams(alpha), TOL)
    return _orbits[key]


def _summary(alpha, h):
    key = (alpha, h)
    if key not in _summaries:
        _summaries[key] = summarize(_orbit(alpha, h))
    return _summaries[key]


def _grid_points():
    for a in ALPHA_GRID:
        for off in OFFSET_GRID:
            yield a, a + 1.0 + off


def check_mean_identity() -> CheckResult:
    """<x> = <y> = 1 within 1e-6 on the (alpha, h) grid."""
    worst = 0.0
    for a, h in _grid_points():
        s = _summary(a, h)
        worst = max(worst, abs(s.mean_x - 1.0), abs(s.mean_y - 1.0))
    return CheckResult("mean-identity", worst < 1e-6, f"max |<x or y>-1| = {worst:.3e}")


def check_variance_identities_alpha_squared() -> CheckResult:
    """Variance identities in the alpha-squared-ratio form:
    var_x*alpha*tau = A_hat, var_y*tau = alpha*A_hat,
    var_y/var_x = alpha^2, at 1e-6 relative.

    The second and third relations hold only at alpha = 1; see the module
    docstring and the corrected variant below.
    """
    worst = 0.0
    for a, h in _grid_points():
        s = _summary(a, h)
        worst = max(
            worst,
            abs(s.var_x * a * s.tau / s.area_lebesgue - 1.0),
            abs(s.var_y * s.tau / (a * s.area_lebesgue) - 1.0),
            abs(s.var_y / s.var_x / a**2 - 1.0),
        )
    return CheckResult("variance-identities-alpha-squared", worst < 1e-6,
                       f"max relative error = {worst:.3e}",
                       documented_defect=True)


def check_variance_identities_corrected() -> CheckResult:
    """Corrected variance identities: var_x*alpha*tau = A_hat,
    var_y*tau = A_hat, var_y/var_x = alpha, at 1e-6 relative."""
    worst = 0.0
    for a, h in _grid_points():
        s = _summary(a, h)
        worst = max(
            worst,
            abs(s.var_x * a * s.tau / s.area_lebesgue - 1.0),
            abs(s.var_y * s.tau / s.area_lebesgue - 1.0),
            abs(s.var_y / s.var_x / a - 1.0),
        )
    return CheckResult("variance-identities-corrected", worst < 1e-6,
                       f"max relative error = {worst:.3e}")


def check_energy_conservation() -> CheckResult:
    """Energy conservation: max |H(t) - h| < 1e-8 over one period at tol 1e-10."""
    worst = 0.0
    for a, h in _grid_points():
        orbit = _orbit(a, h)
        hs = hamiltonian((orbit.dense.states[:, 0], orbit.dense.states[:, 1]),
                         ModelParams(a))
        worst = max(worst, float(np.max(np.abs(hs - h))))
    return CheckResult("energy-conservation", worst < 1e-8,
                       f"max |H - h| = {worst:.3e}")


def check_area_derivative_is_period() -> CheckResult:
    """Area derivative: dA/dh = tau within 1e-4 relative; theta = A/(dA/dh) and
    theta_x = theta_y within 1e-4."""
    worst_tau = worst_theta = worst_xy = 0.0
    for a, h in _grid_points():
        s = _summary(a, h)
        d = dA_dh(h, ModelParams(a), tol=TOL)
        worst_tau = max(worst_tau, abs(d / s.tau - 1.0))
        worst_theta = max(worst_theta, abs(s.area_invariant / d / s.theta_y - 1.0))
        worst_xy = max(worst_xy, abs(s.theta_x - s.theta_y))
    ok = worst_tau < 1e-4 and worst_theta < 1e-4 and worst_xy < 1e-4
    return CheckResult(
        "area-derivative-is-period", ok,
        f"dA/dh vs tau: {worst_tau:.3e}, theta vs A/(dA/dh): "
        f"{worst_theta:.3e}, |theta_x-theta_y|: {worst_xy:.3e}")


def check_helmholtz_relation() -> CheckResult:
    """Conservation relation: residual of dh = theta dlnA - F_alpha dalpha falls ~4x
    under step halving at (h, alpha) = (2.61, 1)."""
    p = ModelParams(1.0)
    r1 = helmholtz_residual(2.61, p, 1e-3, 1e-3, tol=TOL).residual
    r2 = helmholtz_residual(2.61, p, 5e-4, 5e-4, tol=TOL).residual
    ratio = abs(r1) / abs(r2)
    ok = 3.0 <= ratio <= 5.0
    return CheckResult("helmholtz-relation", ok,
                       f"residuals {r1:.3e} -> {r2:.3e}, ratio {ratio:.2f}")


def check_small_oscillation_limits() -> CheckResult:
    """Harmonic limits: at h = alpha+1+1e-4, tau -> 2 pi/sqrt(alpha) within 0.1%,
    theta -> h - (alpha+1) within 1%, F_alpha -> -1 within 1%."""
    worst_tau = worst_theta = worst_f = 0.0
    for a in ALPHA_GRID:
        h = a + 1.0 + 1e-4
        s = _summary(a, h)
        worst_tau = max(worst_tau, abs(s.tau / (2 * math.pi / math.sqrt(a)) - 1.0))
        worst_theta = max(worst_theta, abs(s.theta_y / 1e-4 - 1.0))
        worst_f = max(worst_f, abs(s.f_alpha + 1.0))
    ok = worst_tau < 1e-3 and worst_theta < 1e-2 and worst_f < 1e-2
    return CheckResult(
        "small-oscillation-limits", ok,
        f"tau rel {worst_tau:.3e}, theta rel {worst_theta:.3e}, "
        f"F_alpha + 1: {worst_f:.3e}")


def check_eos_monotonicity() -> CheckResult:
    """Monotonicity: at fixed h = 2.61, theta, |F_alpha| and A strictly
    decrease in alpha; at fixed alpha = 1, theta and |F_alpha| strictly
    increase in h."""
    alphas = (0.5, 0.6, 0.8, 1.0, 1.2)
    rows = [_summary(a, 2.61) for a in alphas]
    thetas = [r.theta_y for r in rows]
    forces = [-r.f_alpha for r in rows]
    areas = [r.area_invariant for r in rows]
    dec = lambda v: all(x > y for x, y in zip(v, v[1:]))
    inc = lambda v: all(x < y for x, y in zip(v, v[1:]))
    hs = [2.0 + off for off in (0.1, 0.5, 1.0, 2.0)]
    rows_h = [_summary(1.0, h) for h in hs]
    ok = (dec(thetas) and dec(forces) and dec(areas)
          and inc([r.theta_y for r in rows_h])
          and inc([-r.f_alpha for r in rows_h]))
    return CheckResult(
        "eos-monotonicity", ok,
        f"theta(alpha) {['%.4f' % t for t in thetas]}, "
        f"|F|(alpha) {['%.4f' % f for f in forces]}")


def check_master_equation_stationarity() -> CheckResult:
    """Master-equation stationarity: residual of p = 1/(mn) below 1e-14 on all
    interior states (2..50)^2, alpha in {0.5, 1, 2}, Omega in {1, 10, 100}."""
    worst = 0.0
    for a in ALPHA_GRID:
        p = ModelParams(a)
        for om in (1.0, 10.0, 100.0):
            for m in range(2, 51):
                for n in range(2, 51):
                    r = master_stationarity_residual(
                        DiscreteState(m, n, om), p)
                    worst = max(worst, abs(r))
    return CheckResult("master-equation-stationarity", worst < 1e-14,
                       f"max |inflow - outflow| = {worst:.3e}")


def check_law_of_large_numbers(n_paths: int = 200, seed: int = 20260823) -> CheckResult:
    """Large-population scaling: SSA ensemble RMS density deviation from the ODE at
    t = tau/2 scales as Omega^(-1/2) within +/-20% between Omega = 1e3 and
    4e3."""
    p = ModelParams(1.0)
    tau = _orbit(1.0, 2.61).period_tau
    t_star = tau / 2.0
    x_seed = seed_point(2.61, p)[0]
    rms = {}
    for om in (1000, 4000):
        m0 = round(om * x_seed)
        n0 = om
        ref = integrate((m0 / om, n0 / om), p, t_star, tol=1e-12).at(t_star)
        sq = 0.0
        for i in range(n_paths):
            path = ssa_simulate(DiscreteState(m0, n0, float(om)), p,
                                t_star * 1.001, seed, path_index=i)
            mm, nn = path.state_at(t_star)
            sq += (mm / om - ref[0]) ** 2 + (nn / om - ref[1]) ** 2
        rms[om] = math.sqrt(sq / n_paths)
    exponent = math.log(rms[1000] / rms[4000]) / math.log(4.0)
    ok = 0.4 <= exponent <= 0.6
    return CheckResult(
        "law-of-large-numbers", ok,
        f"RMS {rms[1000]:.4f} @1e3 vs {rms[4000]:.4f} @4e3, "
        f"exponent {exponent:.3f} (target 0.5 +/- 0.1)")


def check_decomposition_eigenvalues() -> CheckResult:
    """Decomposition fixed point: numeric Jacobian eigenvalues at the located fixed point
    vs +/- i sqrt(alpha) + eps(alpha+1)/2.

    The deviation is O(eps^2) with an alpha-dependent constant, so the
    absolute tolerance scales with it: 0.01 at alpha = 1, 0.03 at alpha = 4
    for eps = 0.1.
    """
    eps = 0.1
    devs = {}
    for a, tol in ((1.0, 0.01), (4.0, 0.03)):
        lam = fixed_point_eigenvalues(ModelParams(a), eps)[0]
        pred = complex(0.5 * eps * (a + 1.0), math.sqrt(a))
        devs[a] = (abs(lam - pred), tol)
    # O(eps^2) convergence: halving eps shrinks the deviation ~4x
    lam_h = fixed_point_eigenvalues(ModelParams(4.0), eps / 2)[0]
    dev_h = abs(lam_h - complex(0.25 * eps * 5.0, 2.0))
    quad = devs[4.0][0] / dev_h
    ok = all(d < t for d, t in devs.values()) and 2.5 <= quad <= 6.0
    return CheckResult(
        "decomposition-eigenvalues", ok,
        f"|dev| alpha=1: {devs[1.0][0]:.4f} (<0.01), alpha=4: "
        f"{devs[4.0][0]:.4f} (<0.03), eps-halving ratio {quad:.2f}")


def check_h_diffusion(seed: int = 20260823) -> CheckResult:
    """Energy-diffusion table: p_ss strictly increasing over the top decade; b positive
    and increasing; A -> 0 at the lower edge; ensemble H-drift matches
    eps*b(h0) within 3 standard errors."""
    p = ModelParams(1.0)
    table = pss_curve(p, h_grid=p.h_min() + np.logspace(-3, 1, 24), tol=1e-8)
    top = table.h_grid >= p.h_min() + 1.0
    shape_ok = (np.all(np.diff(table.pss_values[top]) > 0)
                and np.all(table.b_values > 0)
                and np.all(np.diff(table.b_values) > 0)
                and table.a_values[0] < 0.1
                and table.a_values[0] == table.a_values.min())

    # drift averages over a full cycle, so integrate exactly one period;
    # small eps keeps b(H) nearly frozen at b(h0) along the ensemble
    h0 = 2.61
    x0 = seed_point(h0, p)
    b0, _ = averaged_coefficients(h0, p, tol=1e-8)
    _, a_der = averaged_coefficients(h0, p, mode="rms", tol=1e-8)
    tau = _orbit(1.0, h0).period_tau
    eps, n_steps, n_paths = 0.001, 3500, 2000
    dt = tau / n_steps
    dh = np.empty(n_paths)
    for i in range(n_paths):
        path = sde_simulate(x0, p, eps, dt, tau, seed, path_index=i,
                            record_every=n_steps)
        dh[i] = hamiltonian((path.x[-1], path.y[-1]), p) - h0
    drifts = dh / tau
    mean = drifts.mean()
    se = drifts.std(ddof=1) / math.sqrt(n_paths)
    drift_ok = abs(mean - eps * b0) <= 3.0 * se
    var_ratio = dh.var(ddof=1) / (eps * a_der**2 * tau)
    var_ok = abs(var_ratio - 1.0) < 0.25
    return CheckResult(
        "h-diffusion", bool(shape_ok and drift_ok and var_ok),
        f"shape {'ok' if shape_ok else 'BAD'}; drift {mean:.5f} vs "
        f"eps*b = {eps * b0:.5f} (3 SE = {3 * se:.5f}); "
        f"increment variance / (eps A^2 tau) = {var_ratio:.3f} "
        f"(rms-mode A)")


def check_entropy_conservation() -> CheckResult:
    """Entropy conservation: generalized relative entropy (Psi = z ln z) constant in
    t within 1e-4 on a flow-invariant sublevel set, for rho = 1 and the
    Gibbs choice rho = exp(-h/theta); stationary divergence < 1e-10
    pointwise for three rho choices."""
    p = ModelParams(1.0)
    h = 2.61
    tau = _orbit(1.0, h).period_tau
    theta = _summary(1.0, h).theta_y
    xlo, xhi, ylo, yhi = orbit_extents(h, p)
    dom = (xlo, xhi, ylo, yhi)
    w0 = lambda x, y: np.exp(-((x - 1.2) ** 2 + (y - 1.0) ** 2) / 0.02)
    worst_dS = 0.0
    for rho in (lambda H: np.ones_like(H), lambda H: np.exp(-H / theta)):
        fld = DensityField(w0=w0, rho=rho, domain=dom, quadrature_n=64,
                          h_level=h)
        s0 = relative_entropy_at_time(fld, p, 0.0, "zlnz", tol=TOL)
        s1 = relative_entropy_at_time(fld, p, tau / 2.0, "zlnz", tol=TOL)
        worst_dS = max(worst_dS, abs(s1 - s0))

    rng = path_rng(11, 0)
    pts = 0.2 + 4.8 * rng.random((10, 2))
    rhos = [(lambda H: 1.0, lambda H: 0.0),
            (lambda H: math.exp(-H), lambda H: -math.exp(-H)),
            (lambda H: H * H, lambda H: 2.0 * H)]
    worst_div = 0.0
    for rho, rho_p in rhos:
        for x, y in pts:
            worst_div = max(worst_div, abs(
                stationary_divergence((x, y), p, rho, rho_p)))
    ok = worst_dS < 1e-4 and worst_div < 1e-10
    return CheckResult(
        "entropy-conservation", ok,
        f"max |S(tau/2)-S(0)| = {worst_dS:.3e}, "
        f"max |divergence| = {worst_div:.3e}")


def check_reproducibility() -> CheckResult:
    """Reproducibility: identical seeds give byte-identical CSV outputs."""
    from . import cli  # deferred: cli imports this module

    outputs = []
    with tempfile.TemporaryDirectory() as tmp:
        for run in (1, 2):
            out = Path(tmp) / f"run{run}.csv"
            cli.main(["ssa", "--alpha", "1.0", "--omega", "200",
                      "--m0", "200", "--n0", "200", "--t-max", "3.0",
                      "--seed", "123", "--out", str(out)])
            outputs.append(out.read_bytes())
        out_sde = []
        for run in (1, 2):
            out = Path(tmp) / f"sde{run}.csv"
            cli.main(["sde", "--alpha", "1.0", "--epsilon", "0.01",
                      "--x0", "1.2", "--y0", "1.0", "--dt", "1e-3",
                      "--t-max", "1.0", "--seed", "77", "--out", str(out)])
            out_sde.append(out.read_bytes())
    ok = outputs[0] == outputs[1] and out_sde[0] == out_sde[1]
    return CheckResult("reproducibility", ok,
                       f"ssa bytes equal: {outputs[0] == outputs[1]}, "
                       f"sde bytes equal: {out_sde[0] == out_sde[1]}")


ALL_CHECKS = [
    check_mean_identity,
    check_variance_identities_alpha_squared,
    check_variance_identities_corrected,
    check_energy_conservation,
    check_area_derivative_is_period,
    check_helmholtz_relation,
    check_small_oscillation_limits,
    check_eos_monotonicity,
    check_master_equation_stationarity,
    check_law_of_large_numbers,
    check_decomposition_eigenvalues,
    check_h_diffusion,
    check_entropy_conservation,
    check_reproducibility,
]


def run_checks(only=None, strict=False, stream=None):
    """Run the suite; returns (results, exit_code).

    exit_code is 1 if any check fails, except that documented-defect rows
    only count when strict=True.
    """
    results = []
    failures = 0
    for fn in ALL_CHECKS:
        name = fn.__name__.removeprefix("check_").replace("_", "-")
        if only and only not in name:
            continue
        res = fn()
        results.append(res)
        status = "PASS" if res.passed else (
            "FAIL (documented defect)" if res.documented_defect else "FAIL")
        if not res.passed and (strict or not res.documented_defect):
            failures += 1
        if stream is not None:
            print(f"{res.name:38s} {status:30s} {res.detail}", file=stream)
    return results, (1 if failures else 0)
