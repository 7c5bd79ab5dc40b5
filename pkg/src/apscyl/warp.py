"""Warp profiles f(t) > 0 on [0, T] and their derived coefficients.

Every other module consumes profiles only through ``f``, ``df``,
``coefficients`` (p = f'/2f, q = m/f) and ``inv_f_integral``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .errors import DomainError

__all__ = ["WarpProfile", "coefficients", "inv_f_integral"]

_POSITIVITY_GRID = 512
_T_SLACK = 1e-9  # relative slack for t-domain checks


@dataclass(frozen=True)
class WarpProfile:
    """Warp function on the cylinder [0, T].

    Closed-form families:

    - ``constant``: f(t) = c
    - ``exp_pair``: f(t) = e^t + alpha e^{-t}
    - ``cosh_centered``: f(t) = cosh(t - T/2), so f(0) = f(T)
    - ``tabulated``: cubic interpolant of strictly positive samples on a
      uniform t-grid (at least 8 samples)
    """

    kind: str
    T: float
    c: float = 1.0
    alpha: float = 1.0
    samples: tuple = ()
    _spline: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.T <= 0:
            raise DomainError(f"cylinder length T must be positive, got {self.T}")
        if self.kind == "constant":
            if self.c <= 0:
                raise DomainError("constant profile requires c > 0")
        elif self.kind == "exp_pair":
            if self.alpha <= 0:
                raise DomainError("exp_pair profile requires alpha > 0")
        elif self.kind == "cosh_centered":
            pass
        elif self.kind == "tabulated":
            vals = np.asarray(self.samples, dtype=float)
            if vals.size < 8:
                raise DomainError("tabulated profile needs at least 8 samples")
            if np.any(vals <= 0):
                raise DomainError("tabulated profile has a non-positive sample")
            ts = np.linspace(0.0, self.T, vals.size)
            object.__setattr__(self, "_spline", CubicSpline(ts, vals))
        else:
            raise DomainError(f"unknown profile kind {self.kind!r}")
        grid = np.linspace(0.0, self.T, _POSITIVITY_GRID)
        if np.any(self.f(grid) <= 0):
            raise DomainError("profile is not strictly positive on [0, T]")

    @classmethod
    def constant(cls, c: float, T: float) -> "WarpProfile":
        return cls(kind="constant", T=T, c=c)

    @classmethod
    def exp_pair(cls, alpha: float, T: float) -> "WarpProfile":
        return cls(kind="exp_pair", T=T, alpha=alpha)

    @classmethod
    def cosh_centered(cls, T: float) -> "WarpProfile":
        return cls(kind="cosh_centered", T=T)

    @classmethod
    def tabulated(cls, samples, T: float) -> "WarpProfile":
        return cls(kind="tabulated", T=T, samples=tuple(float(v) for v in samples))

    def _check_t(self, t):
        t = np.asarray(t, dtype=float)
        slack = _T_SLACK * max(self.T, 1.0)
        if np.any(t < -slack) or np.any(t > self.T + slack):
            raise DomainError(f"t outside [0, {self.T}]")
        return np.clip(t, 0.0, self.T)

    def f(self, t):
        """Evaluate f(t); accepts scalars or arrays."""
        t = self._check_t(t)
        if self.kind == "constant":
            out = np.full_like(t, self.c)
        elif self.kind == "exp_pair":
            out = np.exp(t) + self.alpha * np.exp(-t)
        elif self.kind == "cosh_centered":
            out = np.cosh(t - 0.5 * self.T)
        else:
            out = self._spline(t)
        return out if out.ndim else float(out)

    def df(self, t):
        """Evaluate f'(t); analytic for closed forms, spline derivative otherwise."""
        t = self._check_t(t)
        if self.kind == "constant":
            out = np.zeros_like(t)
        elif self.kind == "exp_pair":
            out = np.exp(t) - self.alpha * np.exp(-t)
        elif self.kind == "cosh_centered":
            out = np.sinh(t - 0.5 * self.T)
        else:
            out = self._spline(t, 1)
        return out if out.ndim else float(out)


def coefficients(profile: WarpProfile, m: float):
    """Coefficient functions p(t) = f'/(2f) and q(t) = m/f as callables."""

    def p(t):
        return profile.df(t) / (2.0 * profile.f(t))

    def q(t):
        return m / profile.f(t)

    return p, q


def inv_f_integral(profile: WarpProfile, t: float) -> float:
    """Integral of 1/f from 0 to t, adaptive quadrature, abs tol 1e-12."""
    t = float(np.asarray(profile._check_t(t)))
    if t == 0.0:
        return 0.0
    val, _ = quad(lambda tau: 1.0 / profile.f(tau), 0.0, t,
                  epsabs=1e-12, epsrel=1e-12, limit=200)
    return val
