# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels (hot inner loops).

Mirrors ``_kernels_py`` exactly: same uniform-draw order through the bit
generator's next_double stream and the same floating-point arithmetic, so a
seed reproduces the same path on either lane.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from libc.math cimport cos, log1p, sin, sqrt

import numpy as np

cimport numpy as cnp
from numpy.random cimport bitgen_t

from .errors import StepRejectionLimit

cnp.import_array()

BACKEND_NAME = "cython"

cdef double TWO_PI = 6.283185307179586476925286766559

cdef const char *CAPSULE_NAME = "BitGenerator"


cdef bitgen_t *_get_bitgen(object rng) except NULL:
    capsule = rng.bit_generator.capsule
    if not PyCapsule_IsValid(capsule, CAPSULE_NAME):
        raise ValueError("invalid BitGenerator capsule")
    return <bitgen_t *> PyCapsule_GetPointer(capsule, CAPSULE_NAME)


def ssa_chain(m0, n0, omega, alpha, t_max, rng):
    """Exact birth-death simulation; see _kernels_py.ssa_chain."""
    cdef bitgen_t *bg = _get_bitgen(rng)
    cdef long long m = m0
    cdef long long n = n0
    cdef double om = omega
    cdef double al = alpha
    cdef double tmax = t_max
    cdef double t = 0.0
    cdef double r1, r2, r3, r4, total, dt, u
    cdef Py_ssize_t size = 0, cap = 4096

    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts = np.empty(cap, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ms = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ns = np.empty(cap, dtype=np.int64)

    ts[0] = 0.0
    ms[0] = m
    ns[0] = n
    size = 1

    with rng.bit_generator.lock:
        while True:
            r1 = <double> m
            r2 = m * n / om
            r3 = al * n * m / om
            r4 = al * n
            total = r1 + r2 + r3 + r4
            if total <= 0.0:
                break
            dt = -log1p(-bg.next_double(bg.state)) / total
            if t + dt > tmax:
                break
            t = t + dt
            u = bg.next_double(bg.state) * total
            if u < r1:
                m = m + 1
            elif u < r1 + r2:
                m = m - 1
            elif u < r1 + r2 + r3:
                n = n + 1
            else:
                n = n - 1
            if size == cap:
                cap = cap * 2
                ts = np.resize(ts, cap)
                ms = np.resize(ms, cap)
                ns = np.resize(ns, cap)
            ts[size] = t
            ms[size] = m
            ns[size] = n
            size = size + 1

    return ts[:size].copy(), ms[:size].copy(), ns[:size].copy()


def em_chain(x0, y0, alpha, eps, dt, t_max, record_every, rng):
    """Euler-Maruyama stepper; see _kernels_py.em_chain."""
    cdef bitgen_t *bg = _get_bitgen(rng)
    cdef double x = x0
    cdef double y = y0
    cdef double al = alpha
    cdef double ep = eps
    cdef double dt_ = dt
    cdef long n_steps = <long> (t_max / dt + 0.5)
    cdef long rec = record_every
    cdef long n_rec = n_steps // rec + 1
    cdef long step, halvings, attempt
    cdef Py_ssize_t k = 1
    cdef double sub, done, h, sq, u1, u2, r, z1, z2, xn, yn
    cdef bint ok

    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts = np.empty(n_rec, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.empty(n_rec, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.empty(n_rec, dtype=np.float64)
    ts[0] = 0.0
    xs[0] = x
    ys[0] = y

    with rng.bit_generator.lock:
        for step in range(1, n_steps + 1):
            sub = dt_
            done = 0.0
            halvings = 0
            while done < dt_ * (1.0 - 1e-12):
                h = sub if sub <= dt_ - done else dt_ - done
                sq = sqrt(h)
                ok = False
                for attempt in range(100):
                    if ep > 0.0:
                        u1 = bg.next_double(bg.state)
                        u2 = bg.next_double(bg.state)
                        r = sqrt(-2.0 * log1p(-u1))
                        z1 = r * cos(TWO_PI * u2)
                        z2 = r * sin(TWO_PI * u2)
                        xn = (x + x * (1.0 - y) * h
                              + sqrt(ep * x * (1.0 + y)) * sq * z1)
                        yn = (y + al * y * (x - 1.0) * h
                              + sqrt(ep * al * y * (x + 1.0)) * sq * z2)
                    else:
                        xn = x + x * (1.0 - y) * h
                        yn = y + al * y * (x - 1.0) * h
                    if xn > 0.0 and yn > 0.0:
                        ok = True
                        break
                    if ep == 0.0:
                        break
                if ok:
                    x = xn
                    y = yn
                    done = done + h
                else:
                    sub = h * 0.5
                    halvings = halvings + 1
                    if halvings > 40:
                        raise StepRejectionLimit(
                            f"positivity lost at t ~ {step * dt_}")
            if step % rec == 0:
                ts[k] = step * dt_
                xs[k] = x
                ys[k] = y
                k = k + 1

    return ts[:k].copy(), xs[:k].copy(), ys[:k].copy()
