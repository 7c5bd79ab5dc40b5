# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels; same contracts as kernels._core_py."""

import numpy as np

from libc.math cimport isfinite

BACKEND = "cython"

DEF CHECK = 64


def rk4_uw(double[::1] a, double[::1] c, double[::1] b, double smu,
           lams_in, double u0, double w0, double h, int nsteps):
    lams_arr = np.ascontiguousarray(lams_in, dtype=np.float64)
    cdef double[::1] lams = lams_arr
    cdef Py_ssize_t nlam = lams.shape[0]
    u_out = np.empty(nlam, dtype=np.float64)
    w_out = np.empty(nlam, dtype=np.float64)
    cdef double[::1] uo = u_out
    cdef double[::1] wo = w_out
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef Py_ssize_t j
    cdef int i, i2, first_bad = -1, bad
    cdef double u, w, lam, l0, l1, l2, a0, a1, a2, c0, c1, c2
    cdef double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w, tu, tw
    for j in range(nlam):
        lam = lams[j]
        u = u0
        w = w0
        bad = -1
        for i in range(nsteps):
            i2 = 2 * i
            l0 = lam - smu * b[i2]
            l1 = lam - smu * b[i2 + 1]
            l2 = lam - smu * b[i2 + 2]
            a0 = a[i2]; a1 = a[i2 + 1]; a2 = a[i2 + 2]
            c0 = c[i2]; c1 = c[i2 + 1]; c2 = c[i2 + 2]
            k1u = a0 * u + l0 * w
            k1w = -c0 * w - l0 * u
            tu = u + half * k1u
            tw = w + half * k1w
            k2u = a1 * tu + l1 * tw
            k2w = -c1 * tw - l1 * tu
            tu = u + half * k2u
            tw = w + half * k2w
            k3u = a1 * tu + l1 * tw
            k3w = -c1 * tw - l1 * tu
            tu = u + h * k3u
            tw = w + h * k3w
            k4u = a2 * tu + l2 * tw
            k4w = -c2 * tw - l2 * tu
            u = u + sixth * (k1u + 2.0 * (k2u + k3u) + k4u)
            w = w + sixth * (k1w + 2.0 * (k2w + k3w) + k4w)
            if (i % CHECK) == CHECK - 1:
                if not (isfinite(u) and isfinite(w)):
                    bad = i - CHECK + 1
                    break
        if bad < 0 and not (isfinite(u) and isfinite(w)):
            bad = nsteps - CHECK if nsteps > CHECK else 0
        if bad >= 0 and (first_bad < 0 or bad < first_bad):
            first_bad = bad
        uo[j] = u
        wo[j] = w
    return u_out, w_out, first_bad


def rk4_scalar(double[::1] wpot, lam2_in, double x0, double xp0,
               double h, int nsteps):
    lam2_arr = np.ascontiguousarray(lam2_in, dtype=np.float64)
    cdef double[::1] lam2 = lam2_arr
    cdef Py_ssize_t nlam = lam2.shape[0]
    x_out = np.empty(nlam, dtype=np.float64)
    xp_out = np.empty(nlam, dtype=np.float64)
    cdef double[::1] xo = x_out
    cdef double[::1] po = xp_out
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef Py_ssize_t j
    cdef int i, i2, first_bad = -1, bad
    cdef double x, xp, L, g0, g1, g2
    cdef double k1x, k1p, k2x, k2p, k3x, k3p, k4x, k4p, tx, tp
    for j in range(nlam):
        L = lam2[j]
        x = x0
        xp = xp0
        bad = -1
        for i in range(nsteps):
            i2 = 2 * i
            g0 = L + wpot[i2]
            g1 = L + wpot[i2 + 1]
            g2 = L + wpot[i2 + 2]
            k1x = xp
            k1p = -g0 * x
            tx = x + half * k1x
            tp = xp + half * k1p
            k2x = tp
            k2p = -g1 * tx
            tx = x + half * k2x
            tp = xp + half * k2p
            k3x = tp
            k3p = -g1 * tx
            tx = x + h * k3x
            tp = xp + h * k3p
            k4x = tp
            k4p = -g2 * tx
            x = x + sixth * (k1x + 2.0 * (k2x + k3x) + k4x)
            xp = xp + sixth * (k1p + 2.0 * (k2p + k3p) + k4p)
            if (i % CHECK) == CHECK - 1:
                if not (isfinite(x) and isfinite(xp)):
                    bad = i - CHECK + 1
                    break
        if bad < 0 and not (isfinite(x) and isfinite(xp)):
            bad = nsteps - CHECK if nsteps > CHECK else 0
        if bad >= 0 and (first_bad < 0 or bad < first_bad):
            first_bad = bad
        xo[j] = x
        po[j] = xp
    return x_out, xp_out, first_bad


def rk4_transfer(double[::1] a, double[::1] c, lams_in, double h, int nsteps):
    lams_arr = np.ascontiguousarray(lams_in, dtype=np.float64)
    cdef double[::1] lams = lams_arr
    cdef Py_ssize_t nlam = lams.shape[0]
    u1_out = np.empty(nlam, dtype=np.complex128)
    u2_out = np.empty(nlam, dtype=np.complex128)
    v1_out = np.empty(nlam, dtype=np.complex128)
    v2_out = np.empty(nlam, dtype=np.complex128)
    cdef double complex[::1] u1o = u1_out
    cdef double complex[::1] u2o = u2_out
    cdef double complex[::1] v1o = v1_out
    cdef double complex[::1] v2o = v2_out
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef Py_ssize_t j
    cdef int i, i2, col, first_bad = -1, bad
    cdef double a0, a1, a2, c0, c1, c2
    cdef double complex il, u, v
    cdef double complex k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, tu, tv
    cdef double complex uu[2]
    cdef double complex vv[2]
    for j in range(nlam):
        il = 1j * lams[j]
        uu[0] = 1.0; vv[0] = 0.0
        uu[1] = 0.0; vv[1] = 1.0
        bad = -1
        for i in range(nsteps):
            i2 = 2 * i
            a0 = a[i2]; a1 = a[i2 + 1]; a2 = a[i2 + 2]
            c0 = c[i2]; c1 = c[i2 + 1]; c2 = c[i2 + 2]
            for col in range(2):
                u = uu[col]
                v = vv[col]
                k1u = a0 * u - il * v
                k1v = -c0 * v - il * u
                tu = u + half * k1u
                tv = v + half * k1v
                k2u = a1 * tu - il * tv
                k2v = -c1 * tv - il * tu
                tu = u + half * k2u
                tv = v + half * k2v
                k3u = a1 * tu - il * tv
                k3v = -c1 * tv - il * tu
                tu = u + h * k3u
                tv = v + h * k3v
                k4u = a2 * tu - il * tv
                k4v = -c2 * tv - il * tu
                uu[col] = u + sixth * (k1u + 2.0 * (k2u + k3u) + k4u)
                vv[col] = v + sixth * (k1v + 2.0 * (k2v + k3v) + k4v)
            if (i % CHECK) == CHECK - 1:
                if not (isfinite(uu[0].real) and isfinite(vv[0].real)
                        and isfinite(uu[1].real) and isfinite(vv[1].real)):
                    bad = i - CHECK + 1
                    break
        if bad >= 0 and (first_bad < 0 or bad < first_bad):
            first_bad = bad
        u1o[j] = uu[0]
        u2o[j] = uu[1]
        v1o[j] = vv[0]
        v2o[j] = vv[1]
    return u1_out, u2_out, v1_out, v2_out, first_bad
