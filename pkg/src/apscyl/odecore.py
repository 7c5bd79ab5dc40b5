"""Mode-system integration and shooting functions.

The first-order mode system in real coordinates (v = i w):

    u' = (q - p) u + l(t) w,      w' = -(p + q) w - l(t) u,

with p = f'/(2f), q = m/f and l(t) = lambda - s*mu*b(t) (the bulk
perturbation enters as a pointwise shift of lambda). Zeros in lambda of the
shooting functions are exactly the APS eigenvalues of the mode block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import BlowUpError, UnsupportedCaseError
from .modes import APSCase, ModeSpec
from .warp import WarpProfile

__all__ = [
    "PerturbationSpec",
    "ModeSystemState",
    "TransferMatrix",
    "integrate_system",
    "shoot",
    "shoot_batch",
    "scalar_shoot",
    "scalar_shoot_batch",
    "transfer_matrix",
    "DEFAULT_N_STEPS",
]

DEFAULT_N_STEPS = 4000


class ModeSystemState(NamedTuple):
    u: float
    w: float


@dataclass(frozen=True)
class PerturbationSpec:
    """Scalar bulk perturbation s*mu*b(t)*Id supported away from the boundary.

    ``shape`` is "none" or "bump"; the bump is the mollifier
    exp(-1/(x(1-x))) on x = (t-delta)/(T-2*delta), normalized to max 1,
    identically zero on [0, delta] and [T-delta, T]. delta defaults to T/10.
    """

    mu: float = 0.0
    shape: str = "none"
    delta: float | None = None

    @classmethod
    def none(cls) -> "PerturbationSpec":
        return cls()

    @classmethod
    def bump(cls, mu: float, delta: float | None = None) -> "PerturbationSpec":
        return cls(mu=mu, shape="bump", delta=delta)

    def margin(self, T: float) -> float:
        return T / 10.0 if self.delta is None else self.delta

    def values(self, t, T: float):
        """Bump samples at times t (zeros for the trivial shape)."""
        t = np.asarray(t, dtype=float)
        if self.shape == "none":
            return np.zeros_like(t)
        d = self.margin(T)
        if not 0.0 < d < 0.5 * T:
            raise ValueError(f"bump margin delta={d} must lie in (0, T/2)")
        x = (t - d) / (T - 2.0 * d)
        out = np.zeros_like(t)
        inside = (x > 0.0) & (x < 1.0)
        xi = x[inside]
        # normalized so the maximum at x=1/2 is exactly 1
        out[inside] = np.exp(4.0 - 1.0 / (xi * (1.0 - xi)))
        return out


class SampledSystem:
    """Coefficient arrays of one (profile, m, perturbation) mode system,
    sampled on the RK4 half-step grid. Reused across many lambda batches."""

    def __init__(self, profile: WarpProfile, m: float,
                 pert: PerturbationSpec | None = None, s: float = 0.0,
                 n_steps: int = DEFAULT_N_STEPS, t1: float | None = None):
        if n_steps < 100:
            raise ValueError("n_steps must be at least 100")
        self.t1 = profile.T if t1 is None else float(t1)
        t = np.linspace(0.0, self.t1, 2 * n_steps + 1)
        f = np.asarray(profile.f(t), dtype=float)
        df = np.asarray(profile.df(t), dtype=float)
        p = df / (2.0 * f)
        q = m / f
        self.a = np.ascontiguousarray(q - p)
        self.c = np.ascontiguousarray(p + q)
        pert = pert or PerturbationSpec.none()
        self.b = np.ascontiguousarray(pert.values(t, profile.T))
        self.smu = float(s) * pert.mu if pert.shape != "none" else 0.0
        self.h = self.t1 / n_steps
        self.n_steps = n_steps

    def endpoint(self, lams, u0: float, w0: float):
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        u, w, bad = kernels.rk4_uw(self.a, self.c, self.b, self.smu,
                                   lams, u0, w0, self.h, self.n_steps)
        if bad >= 0:
            raise BlowUpError(bad)
        return u, w


def integrate_system(profile: WarpProfile, m: float, lam: float,
                     pert: PerturbationSpec | None = None, s: float = 0.0,
                     init: ModeSystemState = ModeSystemState(0.0, 1.0),
                     n_steps: int = DEFAULT_N_STEPS,
                     t1: float | None = None) -> ModeSystemState:
    """State at t1 (default T) of the real mode system from the given init."""
    sys_ = SampledSystem(profile, m, pert, s, n_steps, t1)
    u, w = sys_.endpoint([lam], init.u, init.w)
    return ModeSystemState(float(u[0]), float(w[0]))


def _shoot_init_and_pick(case: APSCase):
    if case is APSCase.POSITIVE_M:
        return (0.0, 1.0), "w"   # u(0)=0 imposed, zero of w(T) targets v(T)=0
    if case is APSCase.NEGATIVE_M:
        return (1.0, 0.0), "u"   # v(0)=0 imposed, zero of u(T) targets u(T)=0
    raise UnsupportedCaseError(
        "shooting is defined only for m != 0; the self-paired sector "
        "is handled by the matrix oracle")


def shoot_batch(profile: WarpProfile, mode: ModeSpec, lams,
                pert: PerturbationSpec | None = None, s: float = 0.0,
                n_steps: int = DEFAULT_N_STEPS,
                system: SampledSystem | None = None) -> np.ndarray:
    (u0, w0), pick = _shoot_init_and_pick(mode.case)
    sys_ = system or SampledSystem(profile, mode.m, pert, s, n_steps)
    u, w = sys_.endpoint(lams, u0, w0)
    return w if pick == "w" else u


def shoot(profile: WarpProfile, mode: ModeSpec, lam: float,
          pert: PerturbationSpec | None = None, s: float = 0.0,
          n_steps: int = DEFAULT_N_STEPS) -> float:
    """Sign-bearing shooting function; zeros in lambda = APS eigenvalues."""
    return float(shoot_batch(profile, mode, [lam], pert, s, n_steps)[0])


def _scalar_setup(profile: WarpProfile, mode: ModeSpec, variant: str,
                  n_steps: int):
    """Potential array, initial data and endpoint functional for the
    decoupled second-order scalar reductions U'' + (lam^2 -+ q' - q^2) X = 0."""
    if mode.case is APSCase.SELF_PAIRED:
        raise UnsupportedCaseError("scalar reduction is defined only for m != 0")
    if variant not in ("U", "V"):
        raise ValueError(f"variant must be 'U' or 'V', got {variant!r}")
    T = profile.T
    t = np.linspace(0.0, T, 2 * n_steps + 1)
    f = np.asarray(profile.f(t), dtype=float)
    df = np.asarray(profile.df(t), dtype=float)
    m = mode.m
    q = m / f
    dq = -m * df / (f * f)
    wpot = (-dq - q * q) if variant == "U" else (dq - q * q)
    q0 = m / profile.f(0.0)
    qT = m / profile.f(T)
    if mode.case is APSCase.POSITIVE_M:
        if variant == "U":
            init = (0.0, 1.0)
            functional = lambda x, xp: xp - qT * x
        else:
            init = (1.0, -q0)
            functional = lambda x, xp: x
    else:
        if variant == "U":
            init = (1.0, q0)
            functional = lambda x, xp: x
        else:
            init = (0.0, 1.0)
            functional = lambda x, xp: xp + qT * x
    return np.ascontiguousarray(wpot), init, functional


def scalar_shoot_batch(profile: WarpProfile, mode: ModeSpec, lams,
                       variant: str = "U",
                       n_steps: int = DEFAULT_N_STEPS) -> np.ndarray:
    wpot, (x0, xp0), functional = _scalar_setup(profile, mode, variant, n_steps)
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    h = profile.T / n_steps
    x, xp, bad = kernels.rk4_scalar(wpot, lams * lams, x0, xp0, h, n_steps)
    if bad >= 0:
        raise BlowUpError(bad)
    return functional(x, xp)


def scalar_shoot(profile: WarpProfile, mode: ModeSpec, lam: float,
                 variant: str = "U", n_steps: int = DEFAULT_N_STEPS) -> float:
    """Second-order scalar shooting function S_U or S_V (unperturbed only)."""
    return float(scalar_shoot_batch(profile, mode, [lam], variant, n_steps)[0])


@dataclass(frozen=True)
class TransferMatrix:
    """2x2 complex M(lambda) with psi(T) = M psi(0) for the (u, v) system."""

    matrix: np.ndarray
    lam: float
    expected_det: float  # Liouville value f(0)/f(T)

    @property
    def det(self) -> complex:
        m = self.matrix
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]

    def liouville_defect(self) -> float:
        """Relative deviation of det M from f(0)/f(T)."""
        return abs(self.det - self.expected_det) / abs(self.expected_det)


def transfer_matrix(profile: WarpProfile, m: float, lam: float,
                    n_steps: int = DEFAULT_N_STEPS) -> TransferMatrix:
    sys_ = SampledSystem(profile, m, None, 0.0, n_steps)
    u1, u2, v1, v2, bad = kernels.rk4_transfer(
        sys_.a, sys_.c, np.asarray([lam], dtype=float), sys_.h, n_steps)
    if bad >= 0:
        raise BlowUpError(bad)
    mat = np.array([[u1[0], u2[0]], [v1[0], v2[0]]], dtype=complex)
    f0 = float(profile.f(0.0))
    fT = float(profile.f(profile.T))
    return TransferMatrix(matrix=mat, lam=lam, expected_det=f0 / fT)
