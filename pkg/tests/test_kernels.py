"""Backend parity: the compiled core and the numpy fallback must agree."""

import importlib

import numpy as np
import pytest

from apscyl.kernels import _core_py

try:
    from apscyl.kernels import _core
except ImportError:
    _core = None

needs_compiled = pytest.mark.skipif(_core is None, reason="compiled core not built")


def _sample_coeffs(nsteps):
    t = np.linspace(0.0, 3.0, 2 * nsteps + 1)
    f = np.exp(t) + np.exp(-t)
    df = np.exp(t) - np.exp(-t)
    p = df / (2 * f)
    q = 1.5 / f
    b = np.where((t > 0.3) & (t < 2.7),
                 np.exp(4.0 - 1.0 / np.clip(((t - 0.3) / 2.4) * (1 - (t - 0.3) / 2.4),
                                            1e-12, None)), 0.0)
    return (np.ascontiguousarray(q - p), np.ascontiguousarray(p + q),
            np.ascontiguousarray(b))


@needs_compiled
def test_rk4_uw_backends_agree():
    a, c, b = _sample_coeffs(500)
    lams = np.linspace(-6, 6, 37)
    u1, w1, bad1 = _core.rk4_uw(a, c, b, 1.7, lams, 0.0, 1.0, 3.0 / 500, 500)
    u2, w2, bad2 = _core_py.rk4_uw(a, c, b, 1.7, lams, 0.0, 1.0, 3.0 / 500, 500)
    assert bad1 == bad2 == -1
    assert np.max(np.abs(u1 - u2)) < 1e-12
    assert np.max(np.abs(w1 - w2)) < 1e-12


@needs_compiled
def test_rk4_scalar_backends_agree():
    nsteps = 400
    t = np.linspace(0.0, 3.0, 2 * nsteps + 1)
    wpot = np.ascontiguousarray(-1.0 / (1.0 + t) ** 2)
    lam2 = np.linspace(0.1, 30, 23)
    x1, p1, _ = _core.rk4_scalar(wpot, lam2, 0.0, 1.0, 3.0 / nsteps, nsteps)
    x2, p2, _ = _core_py.rk4_scalar(wpot, lam2, 0.0, 1.0, 3.0 / nsteps, nsteps)
    assert np.max(np.abs(x1 - x2)) < 1e-12
    assert np.max(np.abs(p1 - p2)) < 1e-12


@needs_compiled
def test_rk4_transfer_backends_agree():
    a, c, _ = _sample_coeffs(300)
    lams = np.linspace(-4, 4, 11)
    r1 = _core.rk4_transfer(a, c, lams, 3.0 / 300, 300)
    r2 = _core_py.rk4_transfer(a, c, lams, 3.0 / 300, 300)
    for x, y in zip(r1[:4], r2[:4]):
        assert np.max(np.abs(x - y)) < 1e-12


def test_dispatcher_env_override(monkeypatch):
    import apscyl.kernels as K

    monkeypatch.setenv("APSCYL_PURE_PYTHON", "1")
    mod = importlib.reload(K)
    assert mod.BACKEND == "python"
    monkeypatch.delenv("APSCYL_PURE_PYTHON")
    mod = importlib.reload(K)
    assert mod.BACKEND in ("cython", "python")
