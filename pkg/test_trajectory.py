"""
Tests for trajectory tables: CSV persistence, interpolation, dispersion,
corner cases and the plant coefficients.
"""
import math

import numpy as np
import pandas as pd
import pytest

from application.trajectory.corner_cases import enumerate_corner_cases
from application.trajectory.synthetic_trajectory import synth_reference_trajectory
from application.trajectory.trajectory_service import (
    apply_dispersion,
    max_q_time,
    plant_coefficients,
    sample_params,
    schedule_nodes,
)
from conftest import make_point
from domain.entities.trajectory_point import TRAJECTORY_COLUMNS, TrajectoryTable
from domain.entities.uncertainty_set import DISPERSED_PARAMETERS, UncertaintySet
from domain.errors import SimulationError, TrajectoryError
from infrastructure.persistence.csv_trajectory_repository import load_trajectory, save_trajectory


def _write_csv(path, rows):
    pd.DataFrame(rows, columns=list(TRAJECTORY_COLUMNS)).to_csv(path, index=False)


def _row(t, **overrides):
    p = make_point(t=t, **overrides)
    return [getattr(p, name) for name in TRAJECTORY_COLUMNS]


def test_load_two_row_csv(tmp_path):
    path = tmp_path / "traj.csv"
    _write_csv(path, [_row(0.0), _row(1.0, m=900.0)])
    table = load_trajectory(path)
    assert len(table) == 2
    assert table.duration == 1.0
    assert table.points[1].m == 900.0


def test_load_rejects_repeated_time(tmp_path):
    path = tmp_path / "traj.csv"
    _write_csv(path, [_row(0.0), _row(0.0)])
    with pytest.raises(TrajectoryError, match="strictly increasing"):
        load_trajectory(path)


def test_load_rejects_missing_column(tmp_path):
    path = tmp_path / "traj.csv"
    frame = pd.DataFrame([_row(0.0), _row(1.0)], columns=list(TRAJECTORY_COLUMNS)).drop(columns=["rho"])
    frame.to_csv(path, index=False)
    with pytest.raises(TrajectoryError, match="rho"):
        load_trajectory(path)


def test_load_rejects_non_finite_value(tmp_path):
    path = tmp_path / "traj.csv"
    _write_csv(path, [_row(0.0), _row(1.0, V=math.inf)])
    with pytest.raises(TrajectoryError, match="non-finite"):
        load_trajectory(path)


def test_load_missing_file_is_an_io_error(tmp_path):
    with pytest.raises(OSError):
        load_trajectory(tmp_path / "absent.csv")


def test_synthetic_file_round_trip(tmp_path, table):
    path = tmp_path / "synthetic.csv"
    save_trajectory(table, path)
    loaded = load_trajectory(path)
    assert len(loaded) == 81
    assert loaded.duration == pytest.approx(80.0)
    np.testing.assert_array_equal(loaded.matrix, table.matrix)


def test_synthetic_profile_shape(table):
    m = table.matrix[:, TRAJECTORY_COLUMNS.index("m")]
    J = table.matrix[:, TRAJECTORY_COLUMNS.index("J")]
    rho = table.matrix[:, TRAJECTORY_COLUMNS.index("rho")]
    V = table.matrix[:, TRAJECTORY_COLUMNS.index("V")]
    assert np.all(np.diff(m) < 0) and np.all(np.diff(J) < 0)
    assert np.all(np.diff(rho) < 0) and np.all(np.diff(V) > 0)
    assert table.points[-1].m < table.points[0].m

    Q = 0.5 * rho * V ** 2
    interior_maxima = [i for i in range(1, len(Q) - 1) if Q[i] > Q[i - 1] and Q[i] > Q[i + 1]]
    assert len(interior_maxima) == 1
    assert 0.0 < max_q_time(table) < 80.0


def test_synthetic_rejects_zero_duration():
    with pytest.raises(TrajectoryError):
        synth_reference_trajectory(0.0)


def test_sample_params_is_exact_at_nodes(table):
    node = table.points[17]
    assert sample_params(table, node.t) == node


def test_sample_params_midpoint():
    table = TrajectoryTable((make_point(t=0.0, m=100.0), make_point(t=10.0, m=50.0)))
    assert sample_params(table, 5.0).m == pytest.approx(75.0)


def test_sample_params_out_of_range(table):
    with pytest.raises(TrajectoryError):
        sample_params(table, -1.0)
    with pytest.raises(TrajectoryError):
        sample_params(table, 80.5)


def test_sample_params_piecewise_linear(table):
    a, b, c = (sample_params(table, t) for t in (30.2, 30.5, 30.8))
    for name in ("m", "rho", "V", "T"):
        assert getattr(b, name) == pytest.approx(0.5 * (getattr(a, name) + getattr(c, name)), rel=1e-12)


def test_apply_dispersion_identity(point):
    assert apply_dispersion(point, UncertaintySet.identity()) == point


def test_apply_dispersion_single_parameter(point):
    multipliers = {name: 1.0 for name in DISPERSED_PARAMETERS}
    multipliers["C_N_alpha"] = 1.2
    dispersed = apply_dispersion(point, UncertaintySet(multipliers))
    assert dispersed.C_N_alpha == pytest.approx(1.2 * point.C_N_alpha)
    assert dispersed.m == point.m
    assert dispersed.theta0 == point.theta0


def test_dispersion_on_mass_and_thrust(point):
    multipliers = {name: 1.0 for name in DISPERSED_PARAMETERS}
    multipliers.update(m=0.9, T=1.1)
    before = plant_coefficients(point)
    after = plant_coefficients(apply_dispersion(point, UncertaintySet(multipliers)))
    assert after.n_c / before.n_c == pytest.approx(1.1 / 0.9)


def test_uncertainty_set_rejects_bad_keys():
    with pytest.raises(TrajectoryError):
        UncertaintySet({"m": 1.0})


def test_corner_cases_nominal_levels():
    cases = enumerate_corner_cases(1.0)
    assert len(cases) == 256
    assert len(set(cases)) == 256
    for u in cases:
        for name in ("C_N_alpha", "l_alpha", "rho", "V"):
            assert u.multipliers[name] in (pytest.approx(0.8), pytest.approx(1.2))
        for name in ("m", "J", "l_c", "T"):
            assert u.multipliers[name] in (pytest.approx(0.9), pytest.approx(1.1))


def test_corner_cases_order_is_binary_counting():
    cases = enumerate_corner_cases(1.0)
    assert cases == enumerate_corner_cases(1.0)
    assert all(v < 1.0 for v in cases[0].as_tuple())
    assert all(v > 1.0 for v in cases[255].as_tuple())
    # case 1 raises only the last parameter, case 128 only the first
    assert cases[1].multipliers["T"] > 1.0 and cases[1].multipliers["C_N_alpha"] < 1.0
    assert cases[128].multipliers["C_N_alpha"] > 1.0 and cases[128].multipliers["T"] < 1.0


def test_corner_cases_zero_and_double_delta():
    assert all(u.is_identity for u in enumerate_corner_cases(0.0))
    aero = sorted({u.multipliers["rho"] for u in enumerate_corner_cases(2.0)})
    assert aero == pytest.approx([0.6, 1.4])


def test_corner_cases_negative_delta():
    with pytest.raises(TrajectoryError):
        enumerate_corner_cases(-0.5)


def test_plant_coefficients_unit_values():
    p = make_point(J=1.0, l_c=1.0, T=1.0)
    assert plant_coefficients(p).mu_c == pytest.approx(1.0)


def test_plant_coefficients_vacuum():
    c = plant_coefficients(make_point(rho=0.0))
    assert c.mu_alpha == 0.0 and c.n_alpha == 0.0


def test_plant_coefficients_hand_evaluation():
    p = make_point(l_alpha=2.0, rho=1.225, V=100.0, S=1.0, C_N_alpha=1.0, J=1000.0)
    assert p.dynamic_pressure == pytest.approx(6125.0)
    assert plant_coefficients(p).mu_alpha == pytest.approx(12.25)


def test_plant_coefficients_scale_with_inertia(point):
    k = 3.0
    base = plant_coefficients(point)
    scaled = plant_coefficients(make_point(J=point.J * k))
    assert scaled.mu_alpha == pytest.approx(base.mu_alpha / k, rel=1e-15)
    assert scaled.mu_c == pytest.approx(base.mu_c / k, rel=1e-15)
    assert scaled.mu_n == pytest.approx(base.mu_n / k, rel=1e-15)


def test_schedule_nodes_every_ten_seconds(table):
    nodes = schedule_nodes(table, 9)
    assert [n.t for n in nodes] == pytest.approx([0, 10, 20, 30, 40, 50, 60, 70, 80])


def test_trajectory_errors_are_simulation_errors():
    assert issubclass(TrajectoryError, SimulationError)
    assert issubclass(TrajectoryError, ValueError)
