"""Shared test helpers: independent oracles used to freeze expected values."""

import numpy as np
import pytest
from scipy.optimize import brentq

from apscyl import WarpProfile


@pytest.fixture(scope="session")
def flat():
    return WarpProfile.constant(1.0, 3.0)


@pytest.fixture(scope="session")
def exp_pair():
    return WarpProfile.exp_pair(1.0, 3.0)


@pytest.fixture(scope="session")
def cosh_centered():
    return WarpProfile.cosh_centered(3.0)


def flat_cylinder_eigenvalues(m, T, lam_max):
    """Transcendental oracle for the constant profile: zeros of
    tan(wT) = w/m (oscillatory) and tanh(kT) = k/m (hyperbolic), m > 0.
    Independent of the shooting/oracle code paths."""
    m = abs(m)
    roots = []
    g = lambda kap: np.tanh(kap * T) - kap / m
    grid = np.linspace(1e-9, m - 1e-12, 20001)
    vals = g(grid)
    for i in range(len(grid) - 1):
        if vals[i] * vals[i + 1] < 0:
            kap = brentq(g, grid[i], grid[i + 1], xtol=1e-14)
            roots.append(np.sqrt(max(m * m - kap * kap, 0.0)))
    if lam_max > m:
        wmax = np.sqrt(lam_max * lam_max - m * m)
        h = lambda w: np.sin(w * T) - (w / m) * np.cos(w * T)
        grid = np.linspace(1e-9, wmax, 200001)
        vals = h(grid)
        for i in range(len(grid) - 1):
            if vals[i] * vals[i + 1] < 0:
                w = brentq(h, grid[i], grid[i + 1], xtol=1e-14)
                roots.append(np.sqrt(w * w + m * m))
    lams = sorted(r for r in roots if r <= lam_max)
    return np.array([-x for x in reversed(lams)] + lams)


def bracketed_zeros(fn, lam_max, grid_n=2001):
    """Generic scan-and-brentq root finder for scalar functions of lambda."""
    grid = np.linspace(-lam_max, lam_max, grid_n)
    vals = np.array([fn(x) for x in grid])
    roots = list(grid[vals == 0.0])
    sgn = np.sign(vals)
    for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        roots.append(brentq(fn, grid[i], grid[i + 1], xtol=1e-12))
    return np.sort(np.asarray(roots))
