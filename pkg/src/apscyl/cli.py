"""Command-line interface.

Subcommands: spectrum, pair-check, eta, index, trace, sf-path, parity,
equivariant-sf, oracle-compare, plot-data. Options may come from a JSON
config file (--config); explicit flags override file values. Exit codes:
0 success, 2 configuration error, 3 solver error, 4 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from ._io import dumps_json, write_csv
from .eigensolve import (
    Completion,
    DEFAULT_GRID_N,
    DEFAULT_ORACLE_N,
    DEFAULT_TOL,
    eigenvalues_shooting,
    match_spectra,
    oracle_eigenvalues,
)
from .errors import (
    ApscylError,
    BlowUpError,
    ConfigError,
    DomainError,
    EndpointError,
    LatticeError,
    LiftAbsentError,
    SolverError,
    TransversalityError,
    UnsupportedCaseError,
)
from .flow import (
    HolonomyPath,
    _relevant_ks,
    crossing_spectral_flow,
    equivariant_spectral_flow,
    mode_branch_table,
    monotone_parity,
)
from .modes import APSCase, Lattice, classify_mode, lattice_window, paired_mode
from .odecore import DEFAULT_N_STEPS, SampledSystem, shoot_batch
from .symmetry import Boundary, boundary_eta, chiral_index, pair_spectrum_gap, reflection_trace
from .warp import WarpProfile

_PRECONDITION_ERRORS = (LiftAbsentError, UnsupportedCaseError, EndpointError,
                        TransversalityError, LatticeError, DomainError)

# config keys accepted from a JSON file, with casters
_CONFIG_KEYS = {
    "profile": str, "c": float, "alpha": float, "T": float, "profile_csv": str,
    "lattice": str, "A": float, "k": float, "k_min": float, "k_max": float,
    "lambda_max": float, "grid": int, "tol": float, "n_steps": int,
    "oracle_n": int, "completion": str, "mu": float, "delta": float,
    "s_grid": int, "m": float, "boundary": str, "a0": float, "a1": float,
    "path_linear": list, "path_csv": str, "out": str, "emit_shooting": str,
    "events_csv": str, "timeline_csv": str, "branches_csv": str, "kind": str,
}


_PROFILE_OBJECT_KEYS = {"kind": "profile", "alpha": "alpha", "c": "c",
                        "T": "T", "csv": "profile_csv"}


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    if isinstance(raw.get("profile"), dict):
        # object form {"kind": "exp_pair", "alpha": 1.0, "T": 3.0}
        obj = raw.pop("profile")
        for key, val in obj.items():
            if key not in _PROFILE_OBJECT_KEYS:
                raise ConfigError(f"unknown profile key {key!r}")
            raw.setdefault(_PROFILE_OBJECT_KEYS[key], val)
    out = {}
    for key, val in raw.items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        caster = _CONFIG_KEYS[key]
        try:
            out[key] = caster(val) if not isinstance(val, caster) else val
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for config key {key!r}: {val!r}") from exc
    return out


def _merge(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
        for key, val in cfg.items():
            if getattr(args, key, None) is None:
                setattr(args, key, val)
    return args


def _build_profile(args) -> WarpProfile:
    kind = args.profile or "exp_pair"
    T = args.T if args.T is not None else 3.0
    try:
        if kind == "constant":
            return WarpProfile.constant(args.c if args.c is not None else 1.0, T)
        if kind == "exp_pair":
            return WarpProfile.exp_pair(args.alpha if args.alpha is not None else 1.0, T)
        if kind == "cosh_centered":
            return WarpProfile.cosh_centered(T)
        if kind == "tabulated":
            if not args.profile_csv:
                raise ConfigError("tabulated profile needs --profile-csv")
            data = np.loadtxt(args.profile_csv, delimiter=",", skiprows=1)
            return WarpProfile.tabulated(data[:, 1], T=float(data[-1, 0]))
    except DomainError:
        raise
    raise ConfigError(f"unknown profile kind {kind!r}")


def _lattice(args) -> Lattice:
    name = args.lattice or "periodic"
    try:
        return Lattice(name)
    except ValueError:
        raise ConfigError(f"unknown lattice {name!r}") from None


def _completion(args) -> Completion:
    name = getattr(args, "completion", None) or "transmission"
    try:
        return Completion(name)
    except ValueError:
        raise ConfigError(f"unknown completion {name!r}") from None


def _mode_ks(args, lattice: Lattice) -> list[float]:
    if args.k is not None:
        return [args.k]
    if args.k_min is None or args.k_max is None:
        raise ConfigError("need --k or both --k-min and --k-max")
    return lattice_window(lattice, args.k_min, args.k_max)


def _solver_params(args) -> dict:
    return {
        "lam_max": args.lambda_max if args.lambda_max is not None else 10.0,
        "grid_n": args.grid if args.grid is not None else DEFAULT_GRID_N,
        "tol": args.tol if args.tol is not None else DEFAULT_TOL,
        "n_steps": args.n_steps if args.n_steps is not None else DEFAULT_N_STEPS,
        "oracle_n": args.oracle_n if args.oracle_n is not None else DEFAULT_ORACLE_N,
    }


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _path_from_args(args) -> HolonomyPath:
    if args.path_linear is not None:
        a0, c = (float(v) for v in args.path_linear)
        return HolonomyPath.linear(a0, c)
    if args.path_csv:
        data = np.loadtxt(args.path_csv, delimiter=",", skiprows=1)
        return HolonomyPath.from_samples(data[:, 1])
    raise ConfigError("need --path-linear A0 C or --path-csv FILE")


def _shooting_curve_rows(profile, mode, lam_max, grid_n, n_steps):
    system = SampledSystem(profile, mode.m, None, 0.0, n_steps)
    grid = np.linspace(-lam_max, lam_max, grid_n)
    vals = shoot_batch(profile, mode, grid, n_steps=n_steps, system=system)
    spec = eigenvalues_shooting(profile, mode, lam_max, grid_n,
                                DEFAULT_TOL, n_steps=n_steps)
    rows = [(float(l), float(v), 0) for l, v in zip(grid, vals)]
    rows.extend((float(l), 0.0, 1) for l in spec.eigenvalues)
    rows.sort(key=lambda r: (r[0], r[2]))
    return rows


# -------------------------------------------------------------- subcommands

def _cmd_spectrum(args) -> int:
    profile = _build_profile(args)
    lattice = _lattice(args)
    completion = _completion(args)
    sp = _solver_params(args)
    A = args.A if args.A is not None else 0.0
    rows = []
    for k in _mode_ks(args, lattice):
        mode = classify_mode(lattice, k, A)
        if mode.case is APSCase.SELF_PAIRED:
            spec = oracle_eigenvalues(profile, mode, completion,
                                      sp["oracle_n"], sp["lam_max"])
        else:
            spec = eigenvalues_shooting(profile, mode, sp["lam_max"],
                                        sp["grid_n"], sp["tol"],
                                        n_steps=sp["n_steps"])
        for lam, res in zip(spec.eigenvalues, spec.residuals):
            rows.append((float(k), float(mode.m), float(lam), float(res),
                         spec.method))
    header = ["k", "m", "lambda", "residual", "method"]
    if args.out:
        write_csv(args.out, header, rows)
    else:
        from ._io import fmt_float
        sys.stdout.write(",".join(header) + "\n")
        for row in rows:
            sys.stdout.write(",".join(v if isinstance(v, str) else fmt_float(v)
                                      for v in row) + "\n")
    if args.emit_shooting:
        ks = _mode_ks(args, lattice)
        if len(ks) != 1:
            raise ConfigError("--emit-shooting needs a single mode (--k)")
        mode = classify_mode(lattice, ks[0], A)
        if mode.case is APSCase.SELF_PAIRED:
            raise UnsupportedCaseError("shooting curve undefined for m = 0")
        write_csv(args.emit_shooting, ["lambda", "S", "is_zero"],
                  _shooting_curve_rows(profile, mode, sp["lam_max"],
                                       sp["grid_n"], sp["n_steps"]))
    return 0


def _cmd_plot_data(args) -> int:
    profile = _build_profile(args)
    lattice = _lattice(args)
    sp = _solver_params(args)
    A = args.A if args.A is not None else 0.5
    ks = _mode_ks(args, lattice)
    if len(ks) != 1:
        raise ConfigError("plot-data needs a single mode (--k)")
    mode = classify_mode(lattice, ks[0], A)
    if mode.case is APSCase.SELF_PAIRED:
        raise UnsupportedCaseError("shooting curve undefined for m = 0")
    if not args.out:
        raise ConfigError("plot-data needs --out FILE")
    write_csv(args.out, ["lambda", "S", "is_zero"],
              _shooting_curve_rows(profile, mode, sp["lam_max"], sp["grid_n"],
                                   sp["n_steps"]))
    return 0


def _cmd_pair_check(args) -> int:
    profile = _build_profile(args)
    sp = _solver_params(args)
    if args.A is None or args.k is None:
        raise ConfigError("pair-check needs --A and --k")
    gap = pair_spectrum_gap(profile, args.k, args.A, sp["lam_max"],
                            sp["grid_n"], sp["tol"], sp["n_steps"])
    report = {
        "k": args.k,
        "k_pair": paired_mode(args.k, args.A),
        "A": args.A,
        "lambda_max": sp["lam_max"],
        "max_gap": gap,
    }
    _emit(args, dumps_json(report))
    return 0


def _cmd_eta(args) -> int:
    profile = _build_profile(args)
    if args.m is None:
        if args.k is None or args.A is None:
            raise ConfigError("eta needs --m, or --k with --A")
        m = args.k + args.A
    else:
        m = args.m
    boundary = Boundary(args.boundary or "Y0")
    rep = boundary_eta(profile, m, boundary)
    _emit(args, dumps_json({
        "m": rep.m, "boundary": rep.boundary.value, "eta": rep.eta,
        "h": rep.h, "eta_bar": rep.eta_bar,
    }))
    return 0


def _cmd_index(args) -> int:
    profile = _build_profile(args)
    lattice = _lattice(args)
    completion = _completion(args)
    A0 = args.A if args.A is not None else 0.0
    lo = args.k_min if args.k_min is not None else -8.0
    hi = args.k_max if args.k_max is not None else 8.0
    idx = chiral_index(profile, A0, lattice, (lo, hi), completion)
    _emit(args, dumps_json({
        "A0": A0, "lattice": lattice.value, "completion": completion.value,
        "k_window": [lo, hi], "index": idx,
    }))
    return 0


def _cmd_trace(args) -> int:
    profile = _build_profile(args)
    lattice = _lattice(args)
    completion = _completion(args)
    if args.A is None:
        raise ConfigError("trace needs --A")
    rep = reflection_trace(profile, args.A, lattice, completion)
    _emit(args, dumps_json({
        "A0": rep.A0, "lattice": rep.lattice.value,
        "completion": rep.completion.value,
        "self_paired_present": rep.self_paired_present,
        "kernel_dim_self_paired": rep.kernel_dim_self_paired,
        "trace": rep.trace,
    }))
    return 0


def _cmd_sf_path(args) -> int:
    lattice = _lattice(args)
    path = _path_from_args(args)
    rep = crossing_spectral_flow(path, lattice)
    _emit(args, dumps_json({
        "sf": rep.sf, "parity": rep.parity, "endpoint_ok": rep.endpoint_ok,
        "events": [{"s_star": e.s_star, "k": e.k, "sign": e.sign}
                   for e in rep.events],
    }))
    if args.events_csv:
        write_csv(args.events_csv, ["s_star", "k", "sign"],
                  [(e.s_star, e.k, e.sign) for e in rep.events])
    if args.timeline_csv:
        rows = []
        s_grid = np.linspace(0.0, 1.0, 201)
        for k in _relevant_ks(path, lattice):
            for s, val in zip(s_grid, k + np.asarray(path.value(s_grid))):
                rows.append((float(s), float(k), float(val), 0))
        rows.extend((e.s_star, e.k, 0.0, 1) for e in rep.events)
        rows.sort(key=lambda r: (r[1], r[0], r[3]))
        write_csv(args.timeline_csv, ["s", "k", "value", "is_event"], rows)
    return 0


def _cmd_parity(args) -> int:
    lattice = _lattice(args)
    if args.a0 is not None and args.a1 is not None:
        par = monotone_parity(args.a0, args.a1, lattice)
        _emit(args, dumps_json({"parity": par}))
        return 0
    path = _path_from_args(args)
    rep = crossing_spectral_flow(path, lattice)
    _emit(args, dumps_json({"sf": rep.sf, "parity": rep.parity}))
    return 0


def _cmd_equivariant(args) -> int:
    profile = _build_profile(args)
    lattice = _lattice(args)
    completion = _completion(args)
    if args.mu is None:
        raise ConfigError("equivariant-sf needs --mu")
    lo = args.k_min if args.k_min is not None else -2.0
    hi = args.k_max if args.k_max is not None else 2.0
    s_grid_n = args.s_grid if args.s_grid is not None else 101
    lam_max = args.lambda_max if args.lambda_max is not None else 6.0
    rep = equivariant_spectral_flow(
        profile, lattice, args.mu, delta=args.delta, k_window=(lo, hi),
        s_grid_n=s_grid_n, lam_max=lam_max, completion=completion)
    _emit(args, dumps_json({
        "mu": rep.mu, "completion": rep.completion.value,
        "orbit_flows": [{"k": o.k, "k_pair": o.k_pair, "N": o.N}
                        for o in rep.orbit_flows],
        "self_paired_flow": rep.self_paired_flow,
        "total_sf": rep.total_sf,
        "even_off_self_paired": rep.even_off_self_paired,
    }))
    if args.branches_csv:
        rows = mode_branch_table(profile, lattice, args.mu, delta=args.delta,
                                 k_window=(lo, hi), s_grid_n=s_grid_n,
                                 lam_max=lam_max, completion=completion)
        write_csv(args.branches_csv, ["s", "k", "branch", "lambda"], rows)
    return 0


def _cmd_oracle_compare(args) -> int:
    profile = _build_profile(args)
    lattice = _lattice(args)
    completion = _completion(args)
    sp = _solver_params(args)
    A = args.A if args.A is not None else 0.0
    ks = _mode_ks(args, lattice)
    if len(ks) != 1:
        raise ConfigError("oracle-compare needs a single mode (--k)")
    mode = classify_mode(lattice, ks[0], A)
    if mode.case is APSCase.SELF_PAIRED:
        raise UnsupportedCaseError("oracle-compare needs m != 0")
    shooting = eigenvalues_shooting(profile, mode, sp["lam_max"], sp["grid_n"],
                                    sp["tol"], n_steps=sp["n_steps"])
    oracle = oracle_eigenvalues(profile, mode, completion, sp["oracle_n"],
                                sp["lam_max"])
    a, b = match_spectra(shooting.eigenvalues, oracle.eigenvalues, sp["lam_max"])
    gaps = [float(abs(x - y)) for x, y in zip(a, b)]
    _emit(args, dumps_json({
        "k": mode.k, "m": mode.m, "lambda_max": sp["lam_max"],
        "oracle_n": sp["oracle_n"], "count": len(gaps),
        "max_gap": max(gaps) if gaps else 0.0, "gaps": gaps,
    }))
    return 0


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "pair-check": _cmd_pair_check,
    "eta": _cmd_eta,
    "index": _cmd_index,
    "trace": _cmd_trace,
    "sf-path": _cmd_sf_path,
    "parity": _cmd_parity,
    "equivariant-sf": _cmd_equivariant,
    "oracle-compare": _cmd_oracle_compare,
    "plot-data": _cmd_plot_data,
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file; flags override it")
    sub.add_argument("--profile", choices=["constant", "exp_pair",
                                           "cosh_centered", "tabulated"])
    sub.add_argument("--c", type=float, help="constant profile value")
    sub.add_argument("--alpha", type=float, help="exp_pair parameter")
    sub.add_argument("--T", type=float, help="cylinder length")
    sub.add_argument("--profile-csv", dest="profile_csv",
                     help="CSV (t,f) for tabulated profiles")
    sub.add_argument("--lattice", choices=["periodic", "antiperiodic"])
    sub.add_argument("--A", type=float, help="holonomy parameter")
    sub.add_argument("--k", type=float, help="single Fourier label")
    sub.add_argument("--k-min", dest="k_min", type=float)
    sub.add_argument("--k-max", dest="k_max", type=float)
    sub.add_argument("--lambda-max", dest="lambda_max", type=float)
    sub.add_argument("--grid", type=int, help="lambda scan points")
    sub.add_argument("--tol", type=float, help="bisection tolerance")
    sub.add_argument("--n-steps", dest="n_steps", type=int)
    sub.add_argument("--oracle-n", dest="oracle_n", type=int)
    sub.add_argument("--completion", choices=["transmission", "chiral"])
    sub.add_argument("--mu", type=float, help="perturbation coupling")
    sub.add_argument("--delta", type=float, help="bump boundary margin")
    sub.add_argument("--s-grid", dest="s_grid", type=int)
    sub.add_argument("--m", type=float, help="shifted mode parameter")
    sub.add_argument("--boundary", choices=["Y0", "YT"])
    sub.add_argument("--a0", type=float, help="monotone-parity endpoint A(0)")
    sub.add_argument("--a1", type=float, help="monotone-parity endpoint A(1)")
    sub.add_argument("--path-linear", dest="path_linear", nargs=2,
                     metavar=("A0", "C"), help="linear path A(s) = A0 + C s")
    sub.add_argument("--path-csv", dest="path_csv",
                     help="CSV (s,A) of path samples")
    sub.add_argument("--out", help="output file (default stdout)")
    sub.add_argument("--emit-shooting", dest="emit_shooting",
                     help="also write shooting-curve CSV (spectrum only)")
    sub.add_argument("--events-csv", dest="events_csv",
                     help="also write crossing events CSV (sf-path only)")
    sub.add_argument("--timeline-csv", dest="timeline_csv",
                     help="also write k+A(s) timeline CSV (sf-path only)")
    sub.add_argument("--branches-csv", dest="branches_csv",
                     help="also write eigenvalue branch CSV (equivariant-sf only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apscyl",
        description="APS spectra and spectral-flow invariants on warped cylinders")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        _add_common(subs.add_parser(name))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge(args)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (SolverError, BlowUpError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ApscylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
