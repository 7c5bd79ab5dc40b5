"""Spectral-flow invariants.

Holonomy paths (crossing events, integer crossing spectral flow, Z2 parity,
monotone count) and the gauge-trivial equivariant bulk-perturbation family
(orbit-decomposed eigenvalue-branch tracking, evenness off the self-paired
sector).

The holonomy flow is computed purely by the crossing formula: each
transverse zero of k + A(s) contributes sign(A'(s*)); no eigenvalue
tracking happens across the APS-domain jumps. The bulk-perturbation flow
does track eigenvalue branches, since that family is norm-resolvent
continuous on a fixed domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigensolve import Completion, eigenvalues_shooting, oracle_eigenvalues
from .errors import EndpointError, RefinementNeededError, SolverError, TransversalityError
from .modes import APSCase, Lattice, classify_mode, lattice_window, on_lattice
from .odecore import PerturbationSpec
from .warp import WarpProfile

__all__ = [
    "HolonomyPath",
    "CrossingEvent",
    "FlowReport",
    "OrbitFlow",
    "EquivariantReport",
    "endpoint_invertibility",
    "crossing_events",
    "crossing_spectral_flow",
    "monotone_parity",
    "equivariant_spectral_flow",
    "find_flow_coupling",
]

TRANSVERSALITY_FLOOR = 1e-6
_ENDPOINT_EPS = 1e-6
_LATTICE_EPS = 1e-9


@dataclass(frozen=True)
class HolonomyPath:
    """A(s) on [0, 1]: linear a0 + c*s, or the piecewise-linear interpolant
    of uniform samples (at least 16 points; derivative is the segment
    slope, right-continuous at the knots)."""

    kind: str
    a0: float = 0.0
    c: float = 0.0
    samples: tuple = ()

    def __post_init__(self):
        if self.kind == "samples":
            if len(self.samples) < 16:
                raise ValueError("sampled paths need at least 16 points")
        elif self.kind != "linear":
            raise ValueError(f"unknown path kind {self.kind!r}")

    @classmethod
    def linear(cls, a0: float, c: float) -> "HolonomyPath":
        return cls(kind="linear", a0=a0, c=c)

    @classmethod
    def from_samples(cls, values) -> "HolonomyPath":
        return cls(kind="samples", samples=tuple(float(v) for v in values))

    def value(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "linear":
            out = self.a0 + self.c * s
        else:
            vals = np.asarray(self.samples)
            out = np.interp(s, np.linspace(0.0, 1.0, len(vals)), vals)
        return out if out.ndim else float(out)

    def derivative(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "linear":
            out = np.full_like(s, self.c)
        else:
            vals = np.asarray(self.samples)
            n_seg = len(vals) - 1
            idx = np.minimum((s * n_seg).astype(int), n_seg - 1)
            out = (vals[idx + 1] - vals[idx]) * n_seg
        return out if out.ndim else float(out)

    def range_bounds(self) -> tuple[float, float]:
        if self.kind == "linear":
            ends = (self.a0, self.a0 + self.c)
            return float(min(ends)), float(max(ends))
        vals = np.asarray(self.samples)
        return float(np.min(vals)), float(np.max(vals))


@dataclass(frozen=True)
class CrossingEvent:
    s_star: float
    k: float
    sign: int  # sign of A'(s_star)


@dataclass(frozen=True)
class FlowReport:
    events: tuple
    sf: int
    parity: int
    endpoint_ok: bool


def _relevant_ks(path: HolonomyPath, lattice: Lattice) -> list[float]:
    lo, hi = path.range_bounds()
    return lattice_window(lattice, -hi - 1.0, -lo + 1.0)


def endpoint_invertibility(path: HolonomyPath, lattice: Lattice,
                           eps: float = _ENDPOINT_EPS) -> bool:
    """True iff no relevant mode satisfies k + A = 0 at either endpoint."""
    a0 = path.value(0.0)
    a1 = path.value(1.0)
    for k in _relevant_ks(path, lattice):
        if abs(k + a0) <= eps or abs(k + a1) <= eps:
            return False
    return True


def crossing_events(path: HolonomyPath, lattice: Lattice,
                    scan_n: int = 2001, tol: float = 1e-12) -> list[CrossingEvent]:
    """Transverse zeros of k + A(s) in (0, 1), sorted by s_star."""
    if not endpoint_invertibility(path, lattice):
        raise EndpointError("path endpoint sits on a lattice crossing")
    s_grid = np.linspace(0.0, 1.0, scan_n)
    a_vals = np.asarray(path.value(s_grid), dtype=float)
    events = []
    for k in _relevant_ks(path, lattice):
        g = k + a_vals
        for s_exact in s_grid[g == 0.0]:
            events.append(_touch_event(path, k, float(s_exact)))
        sgn = np.sign(g)
        idx = np.nonzero((sgn[:-1] * sgn[1:]) < 0)[0]
        for i in idx:
            lo, hi = s_grid[i], s_grid[i + 1]
            glo = g[i]
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                gm = k + path.value(mid)
                if gm == 0.0:
                    lo = hi = mid
                elif np.sign(gm) == np.sign(glo):
                    lo, glo = mid, gm
                else:
                    hi = mid
            s_star = 0.5 * (lo + hi)
            der = path.derivative(s_star)
            if abs(der) <= TRANSVERSALITY_FLOOR:
                raise TransversalityError(
                    f"|A'({s_star:.6g})| = {abs(der):.3g} below the floor "
                    f"{TRANSVERSALITY_FLOOR}")
            events.append(CrossingEvent(s_star=float(s_star), k=k,
                                        sign=1 if der > 0 else -1))
    events.sort(key=lambda e: e.s_star)
    return events


def _touch_event(path: HolonomyPath, k: float, s_star: float,
                 cushion: float = 1e-7) -> CrossingEvent:
    """A zero landing exactly on a scan point: transversality requires both
    one-sided slopes to agree in sign and clear the floor."""
    d_lo = path.derivative(max(s_star - cushion, 0.0))
    d_hi = path.derivative(min(s_star + cushion, 1.0))
    if (abs(d_lo) <= TRANSVERSALITY_FLOOR or abs(d_hi) <= TRANSVERSALITY_FLOOR
            or np.sign(d_lo) != np.sign(d_hi)):
        raise TransversalityError(
            f"zero of k + A at s = {s_star:.6g} is not a transverse crossing")
    return CrossingEvent(s_star=s_star, k=k, sign=1 if d_hi > 0 else -1)


def crossing_spectral_flow(path: HolonomyPath, lattice: Lattice,
                           scan_n: int = 2001, tol: float = 1e-12) -> FlowReport:
    """Integer crossing flow and Z2 parity of a holonomy path."""
    events = crossing_events(path, lattice, scan_n, tol)
    sf = sum(e.sign for e in events)
    parity = len(events) % 2
    return FlowReport(events=tuple(events), sf=sf, parity=parity, endpoint_ok=True)


def monotone_parity(a0: float, a1: float, lattice: Lattice) -> int:
    """Parity of the lattice count strictly between -a1 and -a0."""
    if a0 == a1:
        raise ValueError("monotone parity needs a0 != a1")
    for val, name in ((a0, "A(0)"), (a1, "A(1)")):
        if on_lattice(lattice, -val, tol=_LATTICE_EPS):
            raise EndpointError(f"-{name} lies on the lattice")
    lo, hi = sorted((-a1, -a0))
    pts = [k for k in lattice_window(lattice, lo, hi) if lo < k < hi]
    return len(pts) % 2


# ---------------------------------------------------------------------------
# Equivariant bulk-perturbation flow (holonomy fixed at the trivial gauge)

@dataclass(frozen=True)
class OrbitFlow:
    k: float
    k_pair: float
    N: int


@dataclass(frozen=True)
class EquivariantReport:
    orbit_flows: tuple
    self_paired_flow: int | None
    total_sf: int
    even_off_self_paired: bool
    mu: float
    completion: Completion


def _match_sorted(a: np.ndarray, b: np.ndarray):
    """Align two ascending spectra by the integer offset minimizing the mean
    displacement (branches enter/leave through the window edges)."""
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return [], 0.0
    best_pairs, best_cost = [], np.inf
    for d in range(-3, 4):
        j_lo = max(0, -d)
        j_hi = min(na, nb - d)
        if j_hi <= j_lo:
            continue
        seg_a = a[j_lo:j_hi]
        seg_b = b[j_lo + d:j_hi + d]
        cost = float(np.mean(np.abs(seg_a - seg_b)))
        if cost < best_cost:
            best_cost = cost
            best_pairs = list(zip(seg_a, seg_b))
    return best_pairs, best_cost


def _segment_crossings(spec_fn, s_lo, s_hi, ev_lo, ev_hi, depth):
    if len(ev_lo) > 1 and np.min(np.diff(ev_lo)) < 1e-8:
        raise RefinementNeededError(s_lo, s_hi, "near-degenerate branches")
    pairs, cost = _match_sorted(ev_lo, ev_hi)
    gaps = np.diff(ev_lo)
    spacing = float(np.min(gaps)) if len(gaps) else np.inf
    if pairs and cost > 0.35 * min(spacing, 1.0):
        if depth <= 0:
            raise RefinementNeededError(s_lo, s_hi, f"matching cost {cost:.3g}")
        s_mid = 0.5 * (s_lo + s_hi)
        ev_mid = spec_fn(s_mid)
        return (_segment_crossings(spec_fn, s_lo, s_mid, ev_lo, ev_mid, depth - 1)
                + _segment_crossings(spec_fn, s_mid, s_hi, ev_mid, ev_hi, depth - 1))
    total = 0
    for x, y in pairs:
        if x < 0.0 <= y:
            total += 1
        elif y < 0.0 <= x:
            total -= 1
    return total


def _tracked_flow(spec_fn, s_grid_n: int, refine_depth: int = 3) -> int:
    """Signed zero crossings of eigenvalue branches over the s-grid."""
    s_values = np.linspace(0.0, 1.0, s_grid_n)
    spectra = [spec_fn(s) for s in s_values]
    for end, name in ((spectra[0], "s=0"), (spectra[-1], "s=1")):
        if len(end) and np.min(np.abs(end)) <= _ENDPOINT_EPS:
            raise EndpointError(f"family endpoint {name} has an eigenvalue "
                                "within 1e-6 of zero")
    total = 0
    for i in range(len(s_values) - 1):
        total += _segment_crossings(spec_fn, s_values[i], s_values[i + 1],
                                    spectra[i], spectra[i + 1], refine_depth)
    return total


def _mode_flow(profile, lattice, k, pert, lam_max, s_grid_n, completion,
               grid_n, n_steps, oracle_n) -> int:
    mode = classify_mode(lattice, k, 0.0)
    if mode.case is APSCase.SELF_PAIRED:
        def spec_fn(s):
            return oracle_eigenvalues(profile, mode, completion, oracle_n,
                                      lam_max, pert, s).eigenvalues
    else:
        def spec_fn(s):
            return eigenvalues_shooting(profile, mode, lam_max, grid_n,
                                        tol=1e-8, pert=pert, s=s,
                                        n_steps=n_steps).eigenvalues
    return _tracked_flow(spec_fn, s_grid_n)


def equivariant_spectral_flow(profile: WarpProfile, lattice: Lattice, mu: float,
                              delta: float | None = None,
                              k_window: tuple[float, float] = (-2.0, 2.0),
                              s_grid_n: int = 101, lam_max: float = 6.0,
                              completion: Completion = Completion.TRANSMISSION,
                              grid_n: int = 601, n_steps: int = 1500,
                              oracle_n: int = 240) -> EquivariantReport:
    """Orbit-decomposed spectral flow of D + s*mu*b(t) at holonomy A0 = 0.

    Tracks each mode's spectrum near zero over the s-grid, asserts the
    paired-orbit equality N_k = N_{-k}, and reports the self-paired flow
    (k = 0 under the chosen completion) separately.
    """
    pert = PerturbationSpec.bump(mu, delta)
    ks = lattice_window(lattice, *k_window)
    flows = {k: _mode_flow(profile, lattice, k, pert, lam_max, s_grid_n,
                           completion, grid_n, n_steps, oracle_n)
             for k in ks}
    orbit_flows = []
    for k in sorted(k for k in ks if k > 0):
        if -k not in flows:
            continue
        if flows[k] != flows[-k]:
            raise SolverError(
                f"orbit {{{k}, {-k}}} has unequal mode flows "
                f"{flows[k]} vs {flows[-k]}")
        orbit_flows.append(OrbitFlow(k=k, k_pair=-k, N=flows[k]))
    self_paired = flows.get(0.0) if on_lattice(lattice, 0.0) and 0.0 in flows else None
    total = 2 * sum(o.N for o in orbit_flows) + (self_paired or 0)
    even = ((total - (self_paired or 0)) % 2) == 0
    return EquivariantReport(orbit_flows=tuple(orbit_flows),
                             self_paired_flow=self_paired, total_sf=total,
                             even_off_self_paired=even, mu=mu,
                             completion=completion)


def mode_branch_table(profile: WarpProfile, lattice: Lattice, mu: float,
                      delta: float | None = None,
                      k_window: tuple[float, float] = (-2.0, 2.0),
                      s_grid_n: int = 101, lam_max: float = 6.0,
                      completion: Completion = Completion.TRANSMISSION,
                      grid_n: int = 601, n_steps: int = 1500,
                      oracle_n: int = 240) -> list[tuple]:
    """Raw eigenvalue branch samples (s, k, branch index, lambda) for
    plotting; branch index is the position in the sorted spectrum."""
    pert = PerturbationSpec.bump(mu, delta)
    rows = []
    for k in lattice_window(lattice, *k_window):
        mode = classify_mode(lattice, k, 0.0)
        for s in np.linspace(0.0, 1.0, s_grid_n):
            if mode.case is APSCase.SELF_PAIRED:
                ev = oracle_eigenvalues(profile, mode, completion, oracle_n,
                                        lam_max, pert, s).eigenvalues
            else:
                ev = eigenvalues_shooting(profile, mode, lam_max, grid_n,
                                          tol=1e-8, pert=pert, s=s,
                                          n_steps=n_steps).eigenvalues
            rows.extend((float(s), float(k), j, float(lam))
                        for j, lam in enumerate(ev))
    return rows


def find_flow_coupling(profile: WarpProfile, lattice: Lattice, k: float = 1.0,
                       mu_values=tuple(range(1, 31)),
                       delta: float | None = None, lam_max: float = 6.0,
                       s_grid_n: int = 41, grid_n: int = 601,
                       n_steps: int = 1500, target_abs: int = 1) -> tuple[float, int]:
    """Automated coupling search: first mu whose mode-k flow has |N| = target.

    Scans the given couplings in order and returns (mu, N).
    """
    for mu in mu_values:
        pert = PerturbationSpec.bump(float(mu), delta)
        N = _mode_flow(profile, lattice, k, pert, lam_max, s_grid_n,
                       Completion.TRANSMISSION, grid_n, n_steps, oracle_n=240)
        if abs(N) == target_abs:
            return float(mu), N
    raise SolverError(f"no coupling in {list(mu_values)} reaches |N| = {target_abs} "
                      f"for mode k = {k}")
