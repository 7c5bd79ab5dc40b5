"""Pure numpy RK4 kernels (fallback when the compiled core is unavailable).

All kernels integrate with a classical fixed-step 4th-order scheme and are
vectorized over the lambda axis. Coefficient arrays are sampled on the
half-step grid t_i = i*h/2, i = 0..2*nsteps (so every RK4 stage abscissa is
a sample point). Finiteness is checked every ``_CHECK`` steps; the returned
``first_bad`` is the start of the first failing block, or -1.
"""

import numpy as np

_CHECK = 64

BACKEND = "python"


def rk4_uw(a, c, b, smu, lams, u0, w0, h, nsteps):
    """Real mode system u' = a u + l w, w' = -c w - l u with l = lam - smu*b(t).

    Returns (u(T), w(T), first_bad) with u, w shaped like lams.
    """
    lams = np.asarray(lams, dtype=float)
    u = np.full(lams.shape, float(u0))
    w = np.full(lams.shape, float(w0))
    half = 0.5 * h
    sixth = h / 6.0
    first_bad = -1
    for i in range(nsteps):
        i2 = 2 * i
        l0 = lams - smu * b[i2]
        l1 = lams - smu * b[i2 + 1]
        l2 = lams - smu * b[i2 + 2]
        a0, a1, a2 = a[i2], a[i2 + 1], a[i2 + 2]
        c0, c1, c2 = c[i2], c[i2 + 1], c[i2 + 2]

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
        if (i % _CHECK) == _CHECK - 1:
            if not (np.all(np.isfinite(u)) and np.all(np.isfinite(w))):
                first_bad = i - _CHECK + 1
                break
    if first_bad < 0 and not (np.all(np.isfinite(u)) and np.all(np.isfinite(w))):
        first_bad = max(nsteps - _CHECK, 0)
    return u, w, first_bad


def rk4_scalar(wpot, lam2, x0, xp0, h, nsteps):
    """Scalar reduction x'' = -(lam2 + wpot(t)) x, vectorized over lam2."""
    lam2 = np.asarray(lam2, dtype=float)
    x = np.full(lam2.shape, float(x0))
    xp = np.full(lam2.shape, float(xp0))
    half = 0.5 * h
    sixth = h / 6.0
    first_bad = -1
    for i in range(nsteps):
        i2 = 2 * i
        g0 = lam2 + wpot[i2]
        g1 = lam2 + wpot[i2 + 1]
        g2 = lam2 + wpot[i2 + 2]

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
        if (i % _CHECK) == _CHECK - 1:
            if not (np.all(np.isfinite(x)) and np.all(np.isfinite(xp))):
                first_bad = i - _CHECK + 1
                break
    if first_bad < 0 and not (np.all(np.isfinite(x)) and np.all(np.isfinite(xp))):
        first_bad = max(nsteps - _CHECK, 0)
    return x, xp, first_bad


def rk4_transfer(a, c, lams, h, nsteps):
    """Complex system u' = a u - i lam v, v' = -c v - i lam u, basis columns.

    Returns the transfer-matrix entries (m11, m12, m21, m22, first_bad) with
    psi(T) = M psi(0).
    """
    lams = np.asarray(lams, dtype=float)
    shape = lams.shape
    u1 = np.ones(shape, dtype=complex)
    v1 = np.zeros(shape, dtype=complex)
    u2 = np.zeros(shape, dtype=complex)
    v2 = np.ones(shape, dtype=complex)
    half = 0.5 * h
    sixth = h / 6.0
    first_bad = -1

    def rhs(aa, cc, u, v):
        il = 1j * lams
        return aa * u - il * v, -cc * v - il * u

    for i in range(nsteps):
        i2 = 2 * i
        a0, a1, a2 = a[i2], a[i2 + 1], a[i2 + 2]
        c0, c1, c2 = c[i2], c[i2 + 1], c[i2 + 2]
        for col in range(2):
            u, v = (u1, v1) if col == 0 else (u2, v2)
            k1u, k1v = rhs(a0, c0, u, v)
            k2u, k2v = rhs(a1, c1, u + half * k1u, v + half * k1v)
            k3u, k3v = rhs(a1, c1, u + half * k2u, v + half * k2v)
            k4u, k4v = rhs(a2, c2, u + h * k3u, v + h * k3v)
            u = u + sixth * (k1u + 2.0 * (k2u + k3u) + k4u)
            v = v + sixth * (k1v + 2.0 * (k2v + k3v) + k4v)
            if col == 0:
                u1, v1 = u, v
            else:
                u2, v2 = u, v
        if (i % _CHECK) == _CHECK - 1:
            ok = (np.all(np.isfinite(u1.real)) and np.all(np.isfinite(v1.real))
                  and np.all(np.isfinite(u2.real)) and np.all(np.isfinite(v2.real)))
            if not ok:
                first_bad = i - _CHECK + 1
                break
    return u1, u2, v1, v2, first_bad
