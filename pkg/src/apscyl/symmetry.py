"""Reflection-symmetry verifications: paired-spectrum equality, boundary
eta-invariants, the vanishing chiral APS index, and the reflection trace on
the APS harmonic space.

The boundary blocks are the 2x2 matrices (m/f(0)) sigma3 and -(m/f(T))
sigma3, so eta is computed in closed form from their two-point symmetric
spectra; no meromorphic continuation is involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .eigensolve import Completion, eigenvalues_shooting, kernel_dimension, match_spectra
from .errors import LatticeError, LiftAbsentError, UnsupportedCaseError
from .modes import (
    APSCase,
    EPS_SELF_PAIRED,
    Lattice,
    classify_mode,
    lattice_window,
    on_lattice,
    paired_mode,
    reflection_lift_exists,
)
from .odecore import DEFAULT_N_STEPS
from .warp import WarpProfile

__all__ = [
    "Boundary",
    "EtaReport",
    "TraceReport",
    "boundary_eta",
    "pair_spectrum_gap",
    "chiral_index",
    "reflection_trace",
]

_QUAD_PANELS = 64


class Boundary(enum.Enum):
    Y0 = "Y0"
    YT = "YT"


@dataclass(frozen=True)
class EtaReport:
    m: float
    boundary: Boundary
    eta: float
    h: int
    eta_bar: float


@dataclass(frozen=True)
class TraceReport:
    A0: float
    lattice: Lattice
    completion: Completion
    self_paired_present: bool
    kernel_dim_self_paired: int
    trace: float


def boundary_eta(profile: WarpProfile, m: float,
                 boundary: Boundary = Boundary.Y0) -> EtaReport:
    """Eta data of one 2x2 boundary block.

    For m != 0 the block spectrum is {m/f, -m/f}: symmetric, invertible,
    so eta = h = eta_bar = 0. For m = 0 the block is the zero operator on a
    two-dimensional fiber: eta = 0, h = 2, eta_bar = 1.
    """
    if abs(m) > EPS_SELF_PAIRED:
        return EtaReport(m=m, boundary=boundary, eta=0.0, h=0, eta_bar=0.0)
    return EtaReport(m=m, boundary=boundary, eta=0.0, h=2, eta_bar=1.0)


def _infer_lattice(k: float) -> Lattice:
    if on_lattice(Lattice.PERIODIC, k):
        return Lattice.PERIODIC
    if on_lattice(Lattice.ANTIPERIODIC, k):
        return Lattice.ANTIPERIODIC
    raise LatticeError(f"k={k} is on neither the integer nor half-integer lattice")


def pair_spectrum_gap(profile: WarpProfile, k: float, A: float, lam_max: float,
                      grid_n: int = 2001, tol: float = 1e-10,
                      n_steps: int = DEFAULT_N_STEPS) -> float:
    """Max sorted-order eigenvalue gap between the k and k_pair = -k-2A blocks.

    The paired blocks are unitarily equivalent, so the gap is pure solver
    error; a cardinality mismatch raises SpectrumMismatchError.
    """
    if not reflection_lift_exists(A):
        raise LiftAbsentError(f"2A = {2 * A} is not an integer")
    lattice = _infer_lattice(k)
    mode = classify_mode(lattice, k, A)
    if abs(mode.m) <= EPS_SELF_PAIRED:
        raise UnsupportedCaseError("pair_spectrum_gap requires m != 0")
    kp = paired_mode(k, A)
    mode_p = classify_mode(lattice, kp, A)
    spec_a = eigenvalues_shooting(profile, mode, lam_max, grid_n, tol, n_steps=n_steps)
    spec_b = eigenvalues_shooting(profile, mode_p, lam_max, grid_n, tol, n_steps=n_steps)
    a, b = match_spectra(spec_a.eigenvalues, spec_b.eigenvalues, lam_max)
    if len(a) == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def _self_paired_kernel_basis(profile: WarpProfile, completion: Completion):
    """Closed-form kernel vectors (u, v) of the m = 0 block, as callables.

    Transmission with f(0) = f(T): single vector (1, 1) f^{-1/2}; any other
    combination is empty.
    """
    mode0 = classify_mode(Lattice.PERIODIC, 0.0, 0.0)
    if kernel_dimension(profile, mode0, completion) == 0:
        return []

    def comp(t):
        return np.asarray(profile.f(t), dtype=float) ** -0.5

    return [(comp, comp)]


def _kernel_form_value(profile: WarpProfile, phi, psi, pauli: str) -> float:
    """<phi, sigma phi'> in L^2(f dt) by composite quadrature, normalized
    against the plain inner products."""
    T = profile.T
    t = np.linspace(0.0, T, 2 * _QUAD_PANELS + 1)
    f = np.asarray(profile.f(t), dtype=float)
    u1, v1 = phi[0](t), phi[1](t)
    u2, v2 = psi[0](t), psi[1](t)
    if pauli == "1":
        integrand = u1 * v2 + v1 * u2
    elif pauli == "3":
        integrand = u1 * u2 - v1 * v2
    else:
        raise ValueError(pauli)
    num = simpson(integrand * f, x=t)
    n1 = simpson((u1 * u1 + v1 * v1) * f, x=t)
    n2 = simpson((u2 * u2 + v2 * v2) * f, x=t)
    return float(num / np.sqrt(n1 * n2))


def chiral_index(profile: WarpProfile, A0: float, lattice: Lattice,
                 k_window: tuple[float, float] = (-8.0, 8.0),
                 completion: Completion = Completion.TRANSMISSION) -> int:
    """Signed kernel-dimension sum over the mode window.

    Every m != 0 block has trivial kernel (closed form), so truncation to a
    finite window is exact. A self-paired kernel contributes the signature
    of the sigma3 grading restricted to it.
    """
    total = 0
    self_paired_seen = False
    for k in lattice_window(lattice, *k_window):
        mode = classify_mode(lattice, k, A0)
        if mode.case is not APSCase.SELF_PAIRED:
            total += 0  # kernel_dimension(m != 0) = 0 by the closed form
            continue
        self_paired_seen = True
        basis = _self_paired_kernel_basis(profile, completion)
        if not basis:
            continue
        gram = np.array([[_kernel_form_value(profile, a, b, "3") for b in basis]
                         for a in basis])
        evs = np.linalg.eigvalsh(gram)
        total += int(np.sum(evs > 1e-10)) - int(np.sum(evs < -1e-10))
    if not self_paired_seen and total != 0:
        raise AssertionError("index must vanish when -A0 is not on the lattice")
    return total


def reflection_trace(profile: WarpProfile, A0: float, lattice: Lattice,
                     completion: Completion = Completion.TRANSMISSION) -> TraceReport:
    """Trace of the lifted reflection on the APS harmonic space.

    Paired orbits contribute zero by the off-diagonal block structure, so
    the trace is the sum of <phi_j, sigma1 phi_j> over an L^2(f dt)
    orthonormal kernel basis of the self-paired sector, when present.
    """
    if not reflection_lift_exists(A0):
        raise LiftAbsentError(f"2*A0 = {2 * A0} is not an integer; no reflection lift")
    present = on_lattice(lattice, -A0, tol=EPS_SELF_PAIRED)
    if not present:
        return TraceReport(A0=A0, lattice=lattice, completion=completion,
                           self_paired_present=False,
                           kernel_dim_self_paired=0, trace=0.0)
    mode0_k = round(-A0 - lattice.offset) + lattice.offset
    mode0 = classify_mode(lattice, mode0_k, A0)
    kd = kernel_dimension(profile, mode0, completion)
    basis = _self_paired_kernel_basis(profile, completion)
    trace = sum(_kernel_form_value(profile, phi, phi, "1") for phi in basis)
    return TraceReport(A0=A0, lattice=lattice, completion=completion,
                       self_paired_present=True,
                       kernel_dim_self_paired=kd, trace=float(trace))
