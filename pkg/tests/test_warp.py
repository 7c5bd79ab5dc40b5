import numpy as np
import pytest

from apscyl import WarpProfile, coefficients, inv_f_integral
from apscyl.errors import DomainError


def test_exp_pair_values(exp_pair):
    assert exp_pair.f(0.0) == pytest.approx(2.0, abs=1e-15)
    assert exp_pair.f(3.0) == pytest.approx(np.exp(3) + np.exp(-3), abs=1e-12)


def test_constant_profile(flat):
    for t in (0.0, 1.3, 3.0):
        assert flat.f(t) == 1.0
        assert flat.df(t) == 0.0


def test_domain_error(exp_pair):
    with pytest.raises(DomainError):
        exp_pair.f(-0.5)
    with pytest.raises(DomainError):
        exp_pair.f(3.5)


def test_coefficients_constant(flat):
    p, q = coefficients(flat, 1.5)
    assert p(1.0) == 0.0
    assert q(1.0) == 1.5


def test_coefficients_exp_pair_at_zero(exp_pair):
    p, q = coefficients(exp_pair, 1.5)
    assert p(0.0) == pytest.approx(0.0, abs=1e-15)   # f'(0) = 1 - 1 = 0
    assert q(0.0) == pytest.approx(0.75, abs=1e-15)  # 1.5 / 2


@pytest.mark.parametrize("make", [
    lambda: WarpProfile.exp_pair(1.0, 3.0),
    lambda: WarpProfile.exp_pair(0.3, 2.0),
    lambda: WarpProfile.cosh_centered(3.0),
    lambda: WarpProfile.constant(2.5, 4.0),
])
def test_derivative_matches_central_difference(make):
    prof = make()
    ts = np.linspace(0.01, prof.T - 0.01, 100)
    h = 1e-5
    fd = (prof.f(ts + h) - prof.f(ts - h)) / (2 * h)
    assert np.max(np.abs(prof.df(ts) - fd)) <= 1e-6


def test_coefficients_vs_finite_difference(exp_pair):
    p, q = coefficients(exp_pair, 1.5)
    t = 3.0 - 1e-6
    h = 1e-6
    fd_p = (exp_pair.f(t + h) - exp_pair.f(t - h)) / (2 * h) / (2 * exp_pair.f(t))
    assert p(t) == pytest.approx(fd_p, abs=1e-10)
    assert q(t) == pytest.approx(1.5 / exp_pair.f(t), abs=1e-14)


def test_inv_f_integral_constant(flat):
    assert inv_f_integral(flat, 3.0) == pytest.approx(3.0, abs=1e-12)


def test_inv_f_integral_exp_pair(exp_pair):
    # antiderivative of 1/(e^t + e^-t) is arctan(e^t)
    assert inv_f_integral(exp_pair, 0.0) == 0.0
    expected = np.arctan(np.exp(3.0)) - np.pi / 4
    assert inv_f_integral(exp_pair, 3.0) == pytest.approx(expected, abs=1e-10)


def test_inv_f_integral_monotone(exp_pair):
    ts = np.linspace(0.0, 3.0, 25)
    vals = [inv_f_integral(exp_pair, t) for t in ts]
    assert np.all(np.diff(vals) > 0)


def test_tabulated_matches_closed_form():
    T = 3.0
    ts = np.linspace(0, T, 201)
    tab = WarpProfile.tabulated(np.exp(ts) + np.exp(-ts), T)
    probe = np.linspace(0, T, 97)
    ref = np.exp(probe) + np.exp(-probe)
    assert np.max(np.abs(tab.f(probe) - ref)) < 1e-6
    ref_d = np.exp(probe) - np.exp(-probe)
    assert np.max(np.abs(tab.df(probe) - ref_d)) < 1e-4


def test_tabulated_rejects_bad_samples():
    with pytest.raises(DomainError):
        WarpProfile.tabulated([1.0, 1.0, -0.1, 1.0, 1.0, 1.0, 1.0, 1.0], 3.0)
    with pytest.raises(DomainError):
        WarpProfile.tabulated([1.0] * 5, 3.0)  # too few samples


def test_invalid_parameters():
    with pytest.raises(DomainError):
        WarpProfile.constant(-1.0, 3.0)
    with pytest.raises(DomainError):
        WarpProfile.exp_pair(-0.5, 3.0)
    with pytest.raises(DomainError):
        WarpProfile.constant(1.0, 0.0)
