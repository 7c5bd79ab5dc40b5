import numpy as np
import pytest

from apscyl import (
    HolonomyPath,
    Lattice,
    crossing_events,
    crossing_spectral_flow,
    endpoint_invertibility,
    equivariant_spectral_flow,
    monotone_parity,
)
from apscyl.errors import EndpointError, TransversalityError


def test_endpoint_invertibility_examples():
    assert endpoint_invertibility(HolonomyPath.linear(0.5, 1.0), Lattice.PERIODIC)
    assert not endpoint_invertibility(HolonomyPath.linear(0.0, 0.0), Lattice.PERIODIC)
    assert endpoint_invertibility(HolonomyPath.linear(0.25, 0.1), Lattice.PERIODIC)


def test_paper_example_crossing():
    events = crossing_events(HolonomyPath.linear(0.5, 1.0), Lattice.PERIODIC)
    assert len(events) == 1
    ev = events[0]
    assert ev.k == -1.0
    assert ev.sign == 1
    assert abs(ev.s_star - 0.5) <= 1e-10


def test_two_crossings():
    events = crossing_events(HolonomyPath.linear(0.5, 2.0), Lattice.PERIODIC)
    assert [(round(e.s_star, 10), e.k, e.sign) for e in events] == [
        (0.25, -1.0, 1), (0.75, -2.0, 1)]


def test_oscillating_path_cancellation():
    s = np.linspace(0, 1, 201)
    path = HolonomyPath.from_samples(0.5 + 0.7 * np.sin(2 * np.pi * s))
    rep = crossing_spectral_flow(path, Lattice.PERIODIC)
    # k=-1 and k=0 each crossed twice with cancelling signs
    assert rep.sf == 0
    assert rep.parity == 0
    assert len(rep.events) == 4


def test_flow_report_identities():
    for a0, c in ((0.5, 1.0), (0.5, 2.0), (0.2, 3.1), (0.3, -2.2)):
        rep = crossing_spectral_flow(HolonomyPath.linear(a0, c), Lattice.PERIODIC)
        assert rep.sf == sum(e.sign for e in rep.events)
        assert rep.parity == len(rep.events) % 2
        assert (rep.parity - rep.sf) % 2 == 0


def test_endpoint_error():
    with pytest.raises(EndpointError):
        crossing_events(HolonomyPath.linear(0.0, 0.5), Lattice.PERIODIC)


def test_transversality_error_on_touch():
    # peak exactly touches the k=-1 crossing value without a sign change
    vals = np.full(17, 0.9)
    vals[8] = 1.0
    path = HolonomyPath.from_samples(vals)
    with pytest.raises(TransversalityError):
        crossing_events(path, Lattice.PERIODIC)


def test_transversality_error_on_flat_segment():
    vals = np.full(17, 0.9)
    vals[7:10] = 1.0
    path = HolonomyPath.from_samples(vals)
    with pytest.raises(TransversalityError):
        crossing_events(path, Lattice.PERIODIC)


def test_monotone_parity_examples():
    assert monotone_parity(0.5, 1.5, Lattice.PERIODIC) == 1
    assert monotone_parity(0.2, 0.3, Lattice.PERIODIC) == 0
    assert monotone_parity(0.5, 2.5, Lattice.PERIODIC) == 0


def test_monotone_parity_orientation():
    assert monotone_parity(1.5, 0.5, Lattice.PERIODIC) == 1


def test_monotone_parity_endpoint_error():
    with pytest.raises(EndpointError):
        monotone_parity(1.0, 1.7, Lattice.PERIODIC)


def test_antiperiodic_crossings():
    # k + 0.2 + s = 0 hits k = -1/2 at s = 0.3
    events = crossing_events(HolonomyPath.linear(0.2, 1.0), Lattice.ANTIPERIODIC)
    assert len(events) == 1
    assert events[0].k == -0.5
    assert abs(events[0].s_star - 0.3) < 1e-10


def test_reversal_antisymmetry():
    rng = np.random.default_rng(3)
    for _ in range(25):
        a0 = float(rng.uniform(0.05, 0.95))
        c = float(rng.uniform(-3, 3))
        path = HolonomyPath.linear(a0, c)
        rev = HolonomyPath.linear(a0 + c, -c)
        if not (endpoint_invertibility(path, Lattice.PERIODIC)
                and endpoint_invertibility(rev, Lattice.PERIODIC)):
            continue
        try:
            fwd = crossing_spectral_flow(path, Lattice.PERIODIC)
            bwd = crossing_spectral_flow(rev, Lattice.PERIODIC)
        except TransversalityError:
            continue
        assert bwd.sf == -fwd.sf
        assert bwd.parity == fwd.parity


def test_linear_flow_matches_monotone_parity():
    rng = np.random.default_rng(5)
    for _ in range(25):
        a0 = float(rng.uniform(0.05, 0.95))
        c = float(rng.uniform(0.2, 3.0)) * (1 if rng.random() < 0.5 else -1)
        path = HolonomyPath.linear(a0, c)
        if not endpoint_invertibility(path, Lattice.PERIODIC):
            continue
        rep = crossing_spectral_flow(path, Lattice.PERIODIC)
        assert rep.parity == monotone_parity(a0, a0 + c, Lattice.PERIODIC)


def test_equivariant_trivial_coupling(exp_pair):
    rep = equivariant_spectral_flow(exp_pair, Lattice.PERIODIC, 0.0,
                                    k_window=(-1, 1), s_grid_n=11)
    assert all(o.N == 0 for o in rep.orbit_flows)
    assert rep.self_paired_flow == 0
    assert rep.total_sf == 0
    assert rep.even_off_self_paired


def test_equivariant_orbit_pairing(exp_pair):
    rep = equivariant_spectral_flow(exp_pair, Lattice.PERIODIC, 2.0,
                                    k_window=(-1, 1), s_grid_n=41)
    assert len(rep.orbit_flows) == 1
    orbit = rep.orbit_flows[0]
    assert (orbit.k, orbit.k_pair) == (1.0, -1.0)
    assert rep.total_sf == 2 * orbit.N + (rep.self_paired_flow or 0)
    assert rep.even_off_self_paired


def test_equivariant_antiperiodic_no_self_paired(exp_pair):
    rep = equivariant_spectral_flow(exp_pair, Lattice.ANTIPERIODIC, 2.0,
                                    k_window=(-1, 1), s_grid_n=41)
    assert rep.self_paired_flow is None
    assert rep.total_sf % 2 == 0
