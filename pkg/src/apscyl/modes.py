"""Fourier lattice, holonomy, shifted mode parameter and reflection pairing."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import LatticeError, LiftAbsentError

__all__ = [
    "Lattice",
    "APSCase",
    "ModeSpec",
    "lattice_window",
    "on_lattice",
    "reflection_lift_exists",
    "paired_mode",
    "classify_mode",
    "EPS_SELF_PAIRED",
]

EPS_SELF_PAIRED = 1e-9  # |m| below this is the self-paired sector
_LATTICE_TOL = 1e-12


class Lattice(enum.Enum):
    PERIODIC = "periodic"       # k in Z
    ANTIPERIODIC = "antiperiodic"  # k in Z + 1/2

    @property
    def offset(self) -> float:
        return 0.0 if self is Lattice.PERIODIC else 0.5


class APSCase(enum.Enum):
    POSITIVE_M = "positive_m"   # u(0) = 0, v(T) = 0
    NEGATIVE_M = "negative_m"   # v(0) = 0, u(T) = 0
    SELF_PAIRED = "self_paired"  # m = 0, needs a kernel completion


@dataclass(frozen=True)
class ModeSpec:
    lattice: Lattice
    k: float
    A: float
    m: float
    case: APSCase


def on_lattice(lattice: Lattice, k: float, tol: float = _LATTICE_TOL) -> bool:
    shifted = k - lattice.offset
    return abs(shifted - round(shifted)) <= tol


def lattice_window(lattice: Lattice, lo: float, hi: float) -> list[float]:
    """All lattice points in [lo, hi], ascending."""
    if lo > hi:
        raise LatticeError(f"empty window bounds: lo={lo} > hi={hi}")
    off = lattice.offset
    first = math.ceil(lo - off - _LATTICE_TOL)
    last = math.floor(hi - off + _LATTICE_TOL)
    return [j + off for j in range(first, last + 1)]


def reflection_lift_exists(A: float, tol: float = EPS_SELF_PAIRED) -> bool:
    """True iff 2A is an integer within tol (the reflection lifts)."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    twoA = 2.0 * A
    return abs(twoA - round(twoA)) <= tol


def paired_mode(k: float, A: float, tol: float = EPS_SELF_PAIRED) -> float:
    """Reflection partner label -k - 2A; satisfies m(k_pair) = -m(k)."""
    if not reflection_lift_exists(A, tol):
        raise LiftAbsentError(f"2A = {2 * A} is not an integer; no reflection lift")
    return -k - 2.0 * A


def classify_mode(lattice: Lattice, k: float, A: float,
                  eps0: float = EPS_SELF_PAIRED) -> ModeSpec:
    """Build the ModeSpec for Fourier label k at holonomy A.

    The APS case tag is a discrete datum: PositiveM for m > eps0, NegativeM
    for m < -eps0, SelfPaired within eps0 of zero.
    """
    if not on_lattice(lattice, k):
        raise LatticeError(f"k={k} not on the {lattice.value} lattice")
    m = k + A
    if m > eps0:
        case = APSCase.POSITIVE_M
    elif m < -eps0:
        case = APSCase.NEGATIVE_M
    else:
        case = APSCase.SELF_PAIRED
    return ModeSpec(lattice=lattice, k=k, A=A, m=m, case=case)
