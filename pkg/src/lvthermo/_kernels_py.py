"""Pure-Python simulation kernels (fallback lane).

These mirror the compiled kernels in ``_kernels.pyx`` operation for
operation: both draw uniforms through the bit generator's next_double stream
in the same order and apply the same floating-point arithmetic, so a given
seed produces the same path on either lane.

Waiting times come from inversion (-log1p(-u) / rate) and Gaussian pairs from
Box-Muller, rather than the ziggurat samplers, precisely so the compiled lane
can reproduce the stream without numpy's generator internals.
"""

import math

import numpy as np

from .errors import StepRejectionLimit

BACKEND_NAME = "python"

_TWO_PI = 2.0 * math.pi


def ssa_chain(m0, n0, omega, alpha, t_max, rng):
    """Exact birth-death simulation (direct method, two uniforms per event).

    Channels, in cumulative order: prey birth (rate m), prey death (m*n/omega),
    predator birth (alpha*n*m/omega), predator death (alpha*n).
    Returns (times, m, n) arrays including the initial state; stops at t_max
    or when every rate vanishes (m = n = 0).
    """
    next_u = rng.random
    m = int(m0)
    n = int(n0)
    t = 0.0
    ts = [0.0]
    ms = [m]
    ns = [n]
    while True:
        r1 = float(m)
        r2 = m * n / omega
        r3 = alpha * n * m / omega
        r4 = alpha * n
        total = r1 + r2 + r3 + r4
        if total <= 0.0:
            break
        dt = -math.log1p(-next_u()) / total
        if t + dt > t_max:
            break
        t += dt
        u = next_u() * total
        if u < r1:
            m += 1
        elif u < r1 + r2:
            m -= 1
        elif u < r1 + r2 + r3:
            n += 1
        else:
            n -= 1
        ts.append(t)
        ms.append(m)
        ns.append(n)
    return (np.asarray(ts, dtype=np.float64),
            np.asarray(ms, dtype=np.int64),
            np.asarray(ns, dtype=np.int64))


def em_chain(x0, y0, alpha, eps, dt, t_max, record_every, rng):
    """Euler-Maruyama for the finite-population SDE.

    dX = X(1-Y) dt + sqrt(eps * X(1+Y)) dW1
    dY = alpha*Y(X-1) dt + sqrt(eps * alpha*Y(X+1)) dW2

    Positivity by reject-and-resample (up to 100 Gaussian redraws), then local
    step halving (at most 40 halvings, else StepRejectionLimit).  Records the
    state every `record_every` macro steps.
    """
    next_u = rng.random
    n_steps = int(round(t_max / dt))
    n_rec = n_steps // record_every + 1
    ts = np.empty(n_rec)
    xs = np.empty(n_rec)
    ys = np.empty(n_rec)
    x = float(x0)
    y = float(y0)
    ts[0] = 0.0
    xs[0] = x
    ys[0] = y
    k = 1
    for step in range(1, n_steps + 1):
        sub = dt
        done = 0.0
        halvings = 0
        while done < dt * (1.0 - 1e-12):
            h = sub if sub <= dt - done else dt - done
            sq = math.sqrt(h)
            ok = False
            for _ in range(100):
                if eps > 0.0:
                    u1 = next_u()
                    u2 = next_u()
                    r = math.sqrt(-2.0 * math.log1p(-u1))
                    z1 = r * math.cos(_TWO_PI * u2)
                    z2 = r * math.sin(_TWO_PI * u2)
                    xn = (x + x * (1.0 - y) * h
                          + math.sqrt(eps * x * (1.0 + y)) * sq * z1)
                    yn = (y + alpha * y * (x - 1.0) * h
                          + math.sqrt(eps * alpha * y * (x + 1.0)) * sq * z2)
                else:
                    xn = x + x * (1.0 - y) * h
                    yn = y + alpha * y * (x - 1.0) * h
                if xn > 0.0 and yn > 0.0:
                    ok = True
                    break
                if eps == 0.0:
                    break
            if ok:
                x = xn
                y = yn
                done += h
            else:
                sub = h * 0.5
                halvings += 1
                if halvings > 40:
                    raise StepRejectionLimit(
                        f"positivity lost at t ~ {step * dt}")
        if step % record_every == 0:
            ts[k] = step * dt
            xs[k] = x
            ys[k] = y
            k += 1
    return ts[:k], xs[:k], ys[:k]
