import numpy as np
import pytest

from apscyl import (
    Lattice,
    ModeSystemState,
    PerturbationSpec,
    WarpProfile,
    classify_mode,
    integrate_system,
    inv_f_integral,
    scalar_shoot,
    shoot,
    transfer_matrix,
)
from apscyl.errors import BlowUpError, UnsupportedCaseError
from apscyl.odecore import scalar_shoot_batch, shoot_batch
from conftest import bracketed_zeros


def test_flat_rotation(flat):
    # m=0, constant profile: pure rotation by angle lam*T
    st = integrate_system(flat, 0.0, np.pi / 3.0, init=ModeSystemState(0.0, 1.0))
    assert st.u == pytest.approx(0.0, abs=1e-8)
    assert st.w == pytest.approx(-1.0, abs=1e-8)


@pytest.mark.parametrize("profile_name,m", [("exp_pair", 1.5), ("cosh", 2.0)])
def test_lambda_zero_closed_form(profile_name, m, exp_pair, cosh_centered):
    prof = exp_pair if profile_name == "exp_pair" else cosh_centered
    st = integrate_system(prof, m, 0.0, init=ModeSystemState(0.0, 1.0))
    expect = np.sqrt(prof.f(0.0) / prof.f(prof.T)) * np.exp(-m * inv_f_integral(prof, prof.T))
    assert st.u == 0.0
    assert st.w == pytest.approx(expect, rel=1e-8)


def test_richardson_fourth_order(exp_pair):
    ref = np.array(integrate_system(exp_pair, 1.5, 1.0,
                                    init=ModeSystemState(0.0, 1.0), n_steps=8000))
    e1 = np.array(integrate_system(exp_pair, 1.5, 1.0,
                                   init=ModeSystemState(0.0, 1.0), n_steps=1000)) - ref
    e2 = np.array(integrate_system(exp_pair, 1.5, 1.0,
                                   init=ModeSystemState(0.0, 1.0), n_steps=2000)) - ref
    order = np.log2(np.max(np.abs(e1)) / np.max(np.abs(e2)))
    assert order >= 3.8


def test_shoot_nonzero_at_lambda_zero(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, 1.0, 0.5)
    assert abs(shoot(exp_pair, mode, 0.0)) > 1e-3


def test_shoot_rejects_self_paired(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, 0.0, 0.0)
    with pytest.raises(UnsupportedCaseError):
        shoot(exp_pair, mode, 1.0)


def test_flat_scalar_shoot_closed_form(flat):
    # m>0 variant U on the flat cylinder: S_U = cos(wT) - (m/w) sin(wT)
    mode = classify_mode(Lattice.PERIODIC, 1.0, 0.5)
    for lam in (2.0, 3.7, 5.2):
        om = np.sqrt(lam**2 - 1.5**2)
        expect = np.cos(om * 3.0) - (1.5 / om) * np.sin(om * 3.0)
        assert scalar_shoot(flat, mode, lam, "U") == pytest.approx(expect, abs=1e-9)


def test_scalar_variants_same_zero_sets(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, 1.0, 0.5)
    zu = bracketed_zeros(lambda x: scalar_shoot(exp_pair, mode, x, "U"), 6.0, 601)
    zv = bracketed_zeros(lambda x: scalar_shoot(exp_pair, mode, x, "V"), 6.0, 601)
    zs = bracketed_zeros(lambda x: shoot(exp_pair, mode, x), 6.0, 601)
    assert len(zu) == len(zv) == len(zs)
    assert np.max(np.abs(zu - zv)) < 1e-6
    assert np.max(np.abs(zu - zs)) < 1e-6


def test_scalar_negative_m_zero_sets(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, -2.0, 0.5)  # m = -1.5
    zu = bracketed_zeros(lambda x: scalar_shoot(exp_pair, mode, x, "U"), 6.0, 601)
    zs = bracketed_zeros(lambda x: shoot(exp_pair, mode, x), 6.0, 601)
    assert len(zu) == len(zs)
    assert np.max(np.abs(zu - zs)) < 1e-6


def test_scalar_shoot_rejects_self_paired(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, 0.0, 0.0)
    with pytest.raises(UnsupportedCaseError):
        scalar_shoot(exp_pair, mode, 1.0, "U")


def test_transfer_matrix_flat_rotation(flat):
    tm = transfer_matrix(flat, 0.0, 1.3)
    assert abs(tm.det - 1.0) < 1e-10


def test_transfer_matrix_liouville(exp_pair):
    for lam in (0.0, 0.7, 2.9):
        tm = transfer_matrix(exp_pair, 0.0, lam)
        assert tm.expected_det == pytest.approx(2.0 / (np.exp(3) + np.exp(-3)), abs=1e-15)
        assert tm.liouville_defect() <= 1e-8


def test_transfer_matrix_diagonal_at_zero(exp_pair):
    tm = transfer_matrix(exp_pair, 0.0, 0.0)
    root = np.sqrt(2.0 / (np.exp(3) + np.exp(-3)))
    assert abs(tm.matrix[0, 1]) < 1e-12 and abs(tm.matrix[1, 0]) < 1e-12
    assert tm.matrix[0, 0] == pytest.approx(root, rel=1e-8)
    assert tm.matrix[1, 1] == pytest.approx(root, rel=1e-8)


def test_transfer_matrix_reality_structure(exp_pair):
    # m11, m22 real; m12, m21 imaginary (conjugation symmetry of the system)
    tm = transfer_matrix(exp_pair, 1.5, 2.3)
    assert abs(tm.matrix[0, 0].imag) < 1e-10
    assert abs(tm.matrix[1, 1].imag) < 1e-10
    assert abs(tm.matrix[0, 1].real) < 1e-10
    assert abs(tm.matrix[1, 0].real) < 1e-10


def test_bump_support_and_normalization(exp_pair):
    pert = PerturbationSpec.bump(2.0)
    t = np.linspace(0, 3.0, 1001)
    b = pert.values(t, 3.0)
    delta = 0.3
    assert np.all(b[t <= delta] == 0.0)
    assert np.all(b[t >= 3.0 - delta] == 0.0)
    assert np.max(b) == pytest.approx(1.0, abs=1e-12)


def test_perturbation_locality(exp_pair):
    # states on [0, delta] identical with and without the bump, bitwise
    pert = PerturbationSpec.bump(5.0)
    delta = exp_pair.T / 10.0
    a = integrate_system(exp_pair, 1.5, 2.0, pert=None, s=0.0,
                         init=ModeSystemState(0.0, 1.0), n_steps=400, t1=delta)
    b = integrate_system(exp_pair, 1.5, 2.0, pert=pert, s=1.0,
                         init=ModeSystemState(0.0, 1.0), n_steps=400, t1=delta)
    assert a == b


def test_perturbed_shoot_stays_real_and_shifts(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, 1.0, 0.5)
    pert = PerturbationSpec.bump(3.0)
    base = shoot_batch(exp_pair, mode, [1.0, 2.0], None, 0.0)
    moved = shoot_batch(exp_pair, mode, [1.0, 2.0], pert, 1.0)
    assert np.all(np.isfinite(moved))
    assert np.any(np.abs(base - moved) > 1e-6)


def test_blow_up_reports_step(exp_pair):
    # huge |m| with coupled components grows like exp(|m| I(t)) and overflows
    mode = classify_mode(Lattice.PERIODIC, -1200.0, 0.0)
    with pytest.raises(BlowUpError) as err:
        shoot(exp_pair, mode, 1.0)
    assert err.value.step >= 0


def test_scalar_shoot_batch_matches_scalar(exp_pair):
    mode = classify_mode(Lattice.PERIODIC, 1.0, 0.5)
    lams = np.array([0.5, 1.5, 4.0])
    batch = scalar_shoot_batch(exp_pair, mode, lams, "U")
    singles = [scalar_shoot(exp_pair, mode, x, "U") for x in lams]
    assert np.allclose(batch, singles, rtol=0, atol=0)
