"""
Tests for the gain-scheduling rules, the controller filters and the four control laws.
"""
import math

import numpy as np
import pytest

from application.control.controllers import (
    ControllerState,
    IndiController,
    PdController,
    PdQdotController,
    build_controller,
    indi_command,
    indi_step,
    pd_qdot_step,
    pd_step,
)
from application.control.filters import DerivativeFilter, LowPassFilter, derivative_filter_step, lowpass_step
from application.control.tuning import (
    controller_dependencies,
    indi_outer_gains,
    lookup_gains,
    pd_node_gains,
    pd_qdot_node_gains,
    schedule_frame,
    tune_pd,
    tune_pd_qdot,
    tune_schedule,
)
from application.linear.transfer_functions import closed_loop_pd_qdot_tf, closed_loop_pd_tf
from application.trajectory.trajectory_service import schedule_nodes
from conftest import make_point
from domain.entities.controller_kind import ControllerKind
from domain.entities.plant_coefficients import PlantCoefficients
from domain.entities.tuning import GainSchedule, GainSet, TuningSpec
from domain.errors import TuningError

DT = 1.0 / 25.0


def coefficients(mu_alpha=0.0, mu_c=1.0, l_alpha=0.0, V=100.0) -> PlantCoefficients:
    return PlantCoefficients(mu_alpha=mu_alpha, mu_c=mu_c, mu_n=0.0, n_alpha=0.0, n_c=0.0, n_n=0.0,
                             V=V, l_alpha=l_alpha, g=9.81, theta0=0.0)


def test_pd_gains_hand_evaluation(spec):
    kP, kD = pd_node_gains(coefficients(), spec)
    assert kP == pytest.approx(-6.25)
    assert kD == pytest.approx(-4.0)


def test_pd_closed_loop_denominator(spec):
    c = coefficients()
    kP, kD = pd_node_gains(c, spec)
    tf = closed_loop_pd_tf(c, GainSet(kP, kD, None, c.mu_c))
    np.testing.assert_allclose(tf.den, [1.0, 4.0, 6.25], atol=1e-12)


def test_pd_qdot_gains_hand_evaluation(spec):
    c = coefficients(mu_alpha=1.0)
    kP, kA, kD = pd_qdot_node_gains(c, spec)
    assert (kP, kA, kD) == pytest.approx((-21.0, -2.2, -12.8))
    tf = closed_loop_pd_qdot_tf(c, GainSet(kP, kD, kA, c.mu_c))
    np.testing.assert_allclose(tf.den, [1.0, 4.0, 6.25], atol=1e-12)
    assert tf.dc_gain() == pytest.approx(1.05, abs=1e-12)


def test_pd_qdot_without_aerodynamics_has_no_proportional_gain(spec):
    kP, _, _ = pd_qdot_node_gains(coefficients(mu_alpha=0.0), spec)
    assert kP == 0.0


def test_zero_effectiveness_is_rejected(spec):
    with pytest.raises(TuningError):
        pd_node_gains(coefficients(mu_c=0.0), spec)
    with pytest.raises(TuningError):
        pd_qdot_node_gains(coefficients(mu_c=0.0), spec)
    with pytest.raises(TuningError):
        tune_pd([make_point(T=0.0), make_point(t=1.0, T=0.0)], spec)


def test_tuning_spec_validation():
    with pytest.raises(TuningError):
        TuningSpec(G0=1.0)
    with pytest.raises(TuningError):
        TuningSpec(zeta=2.5)
    with pytest.raises(TuningError):
        TuningSpec(omega_beta=0.0)


def test_pole_placement_on_random_coefficient_sets(spec):
    rng = np.random.default_rng(2024)
    target = [1.0, 2.0 * spec.zeta * spec.omega_theta, spec.omega_theta ** 2]
    for _ in range(50):
        mu_c = rng.uniform(0.1, 20.0)
        mu_alpha = rng.uniform(0.1, 10.0)
        V = 500.0
        l_alpha = rng.uniform(0.0, 1.0) * V / mu_alpha
        c = coefficients(mu_alpha=mu_alpha, mu_c=mu_c, l_alpha=l_alpha, V=V)

        kP, kD = pd_node_gains(c, spec)
        pd = closed_loop_pd_tf(c, GainSet(kP, kD, None, mu_c))
        np.testing.assert_allclose(pd.den, target, rtol=0.0, atol=1e-9)

        kP, kA, kD = pd_qdot_node_gains(c, spec)
        pdq = closed_loop_pd_qdot_tf(c, GainSet(kP, kD, kA, mu_c))
        np.testing.assert_allclose(pdq.den, target, rtol=0.0, atol=1e-9)
        assert pdq.dc_gain() == pytest.approx(spec.G0, abs=1e-9)


def test_pd_schedule_on_synthetic_nodes(table, spec):
    schedule = tune_schedule(ControllerKind.PD, table, spec)
    assert len(schedule) == 9
    assert schedule.kA is None
    assert schedule.times == pytest.approx(tuple(range(0, 81, 10)))
    assert all(k < 0.0 for k in schedule.kP)


def test_pd_qdot_schedule_has_acceleration_gains(table, spec):
    schedule = tune_pd_qdot(schedule_nodes(table, spec.n_nodes), spec)
    assert schedule.kA is not None and len(schedule.kA) == 9
    assert list(schedule_frame(schedule).columns) == ["t", "kP", "kD", "kA", "mu_c"]


def test_indi_schedule_is_constant_outer_loop(table, spec):
    schedule = tune_schedule(ControllerKind.INDI_LPF, table, spec)
    assert schedule.kP == pytest.approx((6.25,) * 9)
    assert schedule.kD == pytest.approx((4.0,) * 9)
    assert indi_outer_gains(spec) == pytest.approx((6.25, 4.0))
    assert all(m > 0.0 for m in schedule.mu_c)


def test_lookup_gains_interpolates_and_clamps():
    schedule = GainSchedule(times=(0.0, 10.0), kP=(-1.0, -3.0), kD=(2.0, 4.0), mu_c=(5.0, 7.0))
    assert lookup_gains(schedule, 0.0).kP == -1.0
    mid = lookup_gains(schedule, 5.0)
    assert (mid.kP, mid.kD, mid.mu_c) == pytest.approx((-2.0, 3.0, 6.0))
    assert lookup_gains(schedule, 25.0).kP == -3.0
    assert lookup_gains(schedule, -5.0).mu_c == 5.0


def test_derivative_filter_rejects_constants_and_tracks_ramps():
    f = DerivativeFilter(15.0, DT)
    y = [derivative_filter_step(f, 3.0, DT) for _ in range(200)]
    assert abs(y[-1]) < 1e-9

    f.reset()
    y = [derivative_filter_step(f, k * DT, DT) for k in range(200)]
    assert y[-1] == pytest.approx(1.0, abs=1e-9)


def test_lowpass_has_unit_dc_gain():
    f = LowPassFilter(10.0, DT)
    assert lowpass_step(f, 0.0, DT, 10.0) == 0.0
    y = [lowpass_step(f, 2.0, DT, 10.0) for _ in range(300)]
    assert y[-1] == pytest.approx(2.0, abs=1e-9)


def test_filter_prototypes_corner_frequencies():
    d = DerivativeFilter(15.0, DT).prototype()
    assert abs(d(1j * 15.0)) == pytest.approx(15.0 / math.sqrt(2.0))
    lp = LowPassFilter(10.0, DT).prototype()
    assert 20.0 * math.log10(abs(lp(1j * 10.0))) == pytest.approx(-3.0103, abs=1e-3)


def test_pd_law():
    state = ControllerState.create(TuningSpec(), DT)
    gains = GainSet(kP=-6.25, kD=-4.0, kA=None, mu_c=1.0)
    assert pd_step(state, 0.2, 0.2, 0.0, gains) == 0.0
    assert pd_step(state, 0.1, 0.0, 0.0, gains) == pytest.approx(-0.625)
    assert pd_step(state, 0.0, 0.0, 1.0, gains) == pytest.approx(4.0)


def test_pd_qdot_acceleration_term():
    state = ControllerState.create(TuningSpec(), DT)
    gains = GainSet(kP=0.0, kD=0.0, kA=-2.2, mu_c=1.0)
    assert pd_qdot_step(state, 0.0, 0.0, 0.0, DT, gains) == 0.0
    # one rate step: the filter output after the first sample is b * dq
    beta = pd_qdot_step(state, 0.0, 0.0, 1.0, DT, gains)
    assert beta == pytest.approx(2.2 * state.qdot_filter.b)
    assert state.qdot_est == pytest.approx(state.qdot_filter.b)


def test_indi_command_increment():
    assert indi_command(0.3, 0.5, 0.5, 2.0) == 0.3
    assert indi_command(0.0, 1.0, 0.0, 1.0) == pytest.approx(-1.0)
    with pytest.raises(TuningError):
        indi_command(0.0, 1.0, 0.0, 0.0)


def test_indi_exact_inversion_on_linear_pitch_model():
    mu_alpha, mu_c, theta = 0.8, 9.0, 0.05
    beta0, nu = 0.01, -0.4
    qdot0 = mu_alpha * theta - mu_c * beta0
    beta = indi_command(beta0, nu, qdot0, mu_c)
    qdot1 = mu_alpha * theta - mu_c * beta
    assert qdot1 - qdot0 == pytest.approx(nu - qdot0, abs=1e-15)


def test_indi_step_at_rest_commands_nothing(spec):
    state = ControllerState.create(spec, DT)
    assert indi_step(state, 0.0, 0.0, 0.0, DT, spec, 10.0, use_lpf=True) == 0.0
    assert state.nu == 0.0


def test_indi_step_beta0_from_actuator():
    spec = TuningSpec(beta0_source="actuator")
    state = ControllerState.create(spec, DT)
    indi_step(state, 0.0, 0.0, 0.0, DT, spec, 10.0, use_lpf=False, beta_measured=0.02)
    assert state.beta0 == 0.02
    assert state.beta_cmd == pytest.approx(0.02)


def test_build_controller_kinds(table, spec):
    for kind, cls in ((ControllerKind.PD, PdController), (ControllerKind.PD_QDOT, PdQdotController),
                      (ControllerKind.INDI, IndiController), (ControllerKind.INDI_LPF, IndiController)):
        controller = build_controller(kind, tune_schedule(kind, table, spec), spec, DT)
        assert isinstance(controller, cls)
        out = controller.step(0.0, 0.0, 0.0, 0.0, 0.0)
        assert out.beta_cmd == 0.0
        assert math.isnan(out.nu) != kind.is_indi


def test_pd_qdot_controller_needs_acceleration_gains(table, spec):
    with pytest.raises(TuningError):
        build_controller(ControllerKind.PD_QDOT, tune_schedule(ControllerKind.PD, table, spec), spec, DT)


def test_controller_dependencies():
    assert controller_dependencies(ControllerKind.INDI)["parameters"] == ["mu_c"]
    assert "qdot" in controller_dependencies(ControllerKind.PD_QDOT)["measurements"]
    assert "qdot" not in controller_dependencies(ControllerKind.PD)["measurements"]
    assert controller_dependencies("indi_lpf") == controller_dependencies(ControllerKind.INDI)
