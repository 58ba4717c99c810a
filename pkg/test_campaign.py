"""
Tests for run metrics, corner-case campaigns, the sensitivity grid, bandwidth
sweeps and the campaign engine.
"""
import io
import math
from dataclasses import replace

import pandas as pd
import pytest

from application.campaign import campaign_runner
from application.campaign.campaign_engine import CampaignEngine
from application.campaign.campaign_runner import (
    METRIC_COLUMNS,
    calibrate_bandwidth,
    campaign_scenarios,
    nominal_step_metrics,
    pareto_sweep,
    run_campaign,
    run_case,
    sensitivity_grid,
    summarize_cells,
)
from application.campaign.metrics import compute_run_metrics, rms
from application.dynamics.simulator import simulate
from application.progress.console_progress_reporter import ConsoleProgressReporter
from domain.entities.controller_kind import ControllerKind
from domain.entities.scenario import SensorConfig, SimScenario
from domain.errors import DivergenceError, SimulationError

# all-low, aerodynamics-low, aerodynamics-high and all-high corners
CORNERS = [0, 15, 240, 255]


def windowed(table, controller=ControllerKind.INDI_LPF, start=25.0, duration=10.0, **kwargs):
    return SimScenario(table=table, controller=controller, start_time=start, duration=duration, **kwargs)


def test_rms_examples():
    assert rms([3.0, 4.0]) == pytest.approx(math.sqrt(12.5))
    assert rms([-2.0, 2.0, -2.0, 2.0]) == pytest.approx(2.0)
    assert rms([0.0]) == 0.0
    with pytest.raises(ValueError):
        rms([])


def test_run_metrics_match_the_log(table):
    scenario = windowed(table, duration=4.0)
    log = simulate(scenario)
    metrics = compute_run_metrics(log, case_id=7, seed=3)
    assert (metrics.case_id, metrics.seed, metrics.diverged) == (7, 3, False)
    assert metrics.rms_theta_err == pytest.approx(rms(log.theta_err))
    assert metrics.rms_beta_rate == pytest.approx(rms(log.beta_dot))
    assert metrics.max_abs_Qalpha == pytest.approx(max(abs(log.Qalpha)))
    assert metrics.rms_theta_err > 0.0


def test_campaign_scenarios_share_the_wind_seed(table):
    scenarios = campaign_scenarios(windowed(table), 1.0, [255, 3])
    assert [s.case_id for s in scenarios] == [3, 255]
    assert {s.wind.seed for s in scenarios} == {1}
    with pytest.raises(SimulationError):
        campaign_scenarios(windowed(table), 1.0, [256])


def test_wind_realization_is_shared_across_cases(table):
    a, b = campaign_scenarios(windowed(table, duration=4.0), 1.0, [0, 255])
    log_a, log_b = simulate(a), simulate(b)
    assert (log_a.v_w == log_b.v_w).all()
    assert not (log_a.theta == log_b.theta).all()


def test_zero_dispersion_gives_identical_runs(table):
    frame = run_campaign(windowed(table, duration=4.0), delta=0.0, case_ids=[0, 85, 255])
    assert list(frame.columns) == list(METRIC_COLUMNS)
    assert list(frame["case_id"]) == [0, 85, 255]
    metrics = frame[["rms_theta_err_rad", "rms_beta_rate_rad_s", "max_abs_Qalpha_Pa_rad"]]
    assert (metrics.nunique() == 1).all()


def test_campaign_is_deterministic(table):
    template = windowed(table, duration=4.0)
    first = run_campaign(template, case_ids=[0, 255])
    second = run_campaign(template, case_ids=[0, 255])
    pd.testing.assert_frame_equal(first, second)


def test_controller_ordering_on_corner_cases(table):
    worst = {}
    for kind in (ControllerKind.PD, ControllerKind.PD_QDOT, ControllerKind.INDI_LPF):
        frame = run_campaign(windowed(table, kind, start=20.0, duration=20.0), case_ids=CORNERS)
        assert not frame["diverged"].any()
        worst[kind] = frame["rms_theta_err_rad"].max()
    assert worst[ControllerKind.PD] > worst[ControllerKind.INDI_LPF]
    assert worst[ControllerKind.PD] > worst[ControllerKind.PD_QDOT]
    assert worst[ControllerKind.PD_QDOT] >= worst[ControllerKind.INDI_LPF]


def test_pure_indi_moves_the_nozzle_most_under_gyro_noise(table):
    noisy = SensorConfig(gyro_3sigma=math.radians(0.1))
    worst = {}
    for kind in ControllerKind:
        frame = run_campaign(windowed(table, kind, start=0.0, duration=8.0, sensors=noisy), case_ids=CORNERS)
        assert not frame["diverged"].any()
        worst[kind] = frame["rms_beta_rate_rad_s"].max()
    others = [worst[kind] for kind in ControllerKind if kind != ControllerKind.INDI]
    assert worst[ControllerKind.INDI] > max(others)
    assert worst[ControllerKind.INDI_LPF] < worst[ControllerKind.INDI]


def test_divergence_is_recorded(table, monkeypatch):
    def blow_up(scenario):
        raise DivergenceError("theta out of bounds", t=12.5)

    monkeypatch.setattr(campaign_runner, "simulate", blow_up)
    metrics = run_case(replace(windowed(table), case_id=42))
    assert metrics.diverged
    assert metrics.case_id == 42
    assert metrics.rms_theta_err is None
    assert "theta out of bounds" in metrics.message


def test_sensitivity_grid_trends(table):
    grid = sensitivity_grid(windowed(table), noise_levels_dps=(0.0, 0.1), delays=(0, 2), case_ids=[0, 255])
    assert len(grid) == 8
    assert list(grid.columns[:2]) == ["noise_3sigma_dps", "delay_samples"]
    summary = summarize_cells(grid).set_index(["noise_3sigma_dps", "delay_samples"])
    assert len(summary) == 4
    assert (summary["diverged_runs"] == 0).all()
    for delay in (0, 2):
        assert summary.loc[(0.1, delay), "max_rms_beta_rate_rad_s"] > summary.loc[(0.0, delay), "max_rms_beta_rate_rad_s"]
    base = summary.loc[(0.0, 0), "max_rms_theta_err_rad"]
    assert summary.loc[(0.0, 2), "max_rms_theta_err_rad"] == pytest.approx(base, rel=0.10)


def test_pareto_sweep_is_monotone(table):
    template = windowed(table, start=30.0, duration=5.0)
    result = pareto_sweep(ControllerKind.INDI_LPF, [20.0, 6.0, 10.0], template)
    assert list(result.table["bandwidth_rad_s"]) == [6.0, 10.0, 20.0]
    assert not result.table["diverged"].any()
    assert result.monotone
    assert result.calibrated_bandwidth is None


def test_pareto_sweep_rejects_laws_without_filter_bandwidth(table):
    with pytest.raises(SimulationError):
        pareto_sweep(ControllerKind.PD, [5.0, 10.0], windowed(table))


def test_bandwidth_calibration(table):
    template = windowed(table, start=30.0, duration=5.0)
    target = nominal_step_metrics(ControllerKind.INDI_LPF, 10.0, template).rms_theta_err
    found = calibrate_bandwidth(ControllerKind.INDI_LPF, target, template, (6.0, 20.0))
    assert found == pytest.approx(10.0, rel=0.05)
    achieved = nominal_step_metrics(ControllerKind.INDI_LPF, found, template).rms_theta_err
    assert achieved == pytest.approx(target, rel=0.02)
    assert calibrate_bandwidth(ControllerKind.INDI_LPF, 10.0 * target, template, (6.0, 20.0)) is None


def test_engine_keeps_job_order_with_workers():
    engine = CampaignEngine(max_workers=2)
    assert engine.map(abs, [-3, 1, -4, 1, -5, 9, -2, 6]) == [3, 1, 4, 1, 5, 9, 2, 6]
    with pytest.raises(ValueError):
        CampaignEngine(max_workers=0)


def test_console_progress_reporter_output():
    stream = io.StringIO()
    engine = CampaignEngine(progress_reporter=ConsoleProgressReporter(width=10, stream=stream))
    assert engine.map(abs, [-1, -2, -3]) == [1, 2, 3]
    text = stream.getvalue()
    assert "(1/3 runs)" in text
    assert text.endswith("[##########] 100% (3/3 runs)\n")


def test_progress_reporter_without_total():
    stream = io.StringIO()
    reporter = ConsoleProgressReporter(stream=stream, label="cells")
    reporter.update(4, None)
    reporter.finish()
    assert stream.getvalue() == "\r4 cells finished\r4 cells finished\n"
