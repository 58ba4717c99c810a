"""Monte-Carlo corner-case campaigns, sensitivity grids and bandwidth trade-off sweeps."""
import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from application.campaign.campaign_engine import CampaignEngine
from application.campaign.metrics import compute_run_metrics
from application.dynamics.simulator import simulate
from application.trajectory.corner_cases import enumerate_corner_cases
from domain.entities.controller_kind import ControllerKind
from domain.entities.run_metrics import RunMetrics
from domain.entities.scenario import CommandProfile, SimScenario, WindConfig
from domain.entities.uncertainty_set import UncertaintySet
from domain.errors import DivergenceError, SimulationError

logger = logging.getLogger(__name__)

METRIC_COLUMNS = (
    "case_id", "seed", "diverged", "rms_theta_err_rad", "rms_beta_rate_rad_s", "max_abs_Qalpha_Pa_rad", "message",
)

NOISE_LEVELS_DPS = (0.0, 0.05, 0.1)
DELAY_SAMPLES = (0, 1, 2)

# Bandwidths (rad/s) swept per acceleration-feedback family
PARETO_GRIDS: Dict[ControllerKind, Tuple[float, ...]] = {
    ControllerKind.PD_QDOT: (5.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0),
    ControllerKind.INDI_LPF: (6.0, 8.0, 10.0, 12.0, 15.0, 20.0, 25.0),
}
_SWEPT_BANDWIDTH = {ControllerKind.PD_QDOT: "omega_qdot", ControllerKind.INDI_LPF: "omega_beta"}

PARETO_STEP = CommandProfile(kind="step", step_time=0.0, amplitude=math.radians(1.0))
PARETO_DURATION = 10.0


def run_case(scenario: SimScenario) -> RunMetrics:
    """Simulate one scenario; divergence is recorded instead of raised."""
    try:
        log = simulate(scenario)
    except DivergenceError as exc:
        logger.warning("case %d diverged: %s", scenario.case_id, exc)
        return RunMetrics(case_id=scenario.case_id, seed=scenario.master_seed, diverged=True, message=str(exc))
    return compute_run_metrics(log, scenario.case_id, scenario.master_seed)


def metrics_frame(metrics: Sequence[RunMetrics]) -> pd.DataFrame:
    rows = [
        (m.case_id, m.seed, m.diverged, m.rms_theta_err, m.rms_beta_rate, m.max_abs_Qalpha, m.message)
        for m in metrics
    ]
    return pd.DataFrame(rows, columns=list(METRIC_COLUMNS))


def campaign_scenarios(template: SimScenario, delta: float,
                       case_ids: Optional[Sequence[int]] = None) -> List[SimScenario]:
    cases = enumerate_corner_cases(delta)
    ids = range(len(cases)) if case_ids is None else case_ids
    for case_id in ids:
        if not 0 <= case_id < len(cases):
            raise SimulationError(f"corner case id {case_id} out of range")
    # every case keeps the template's wind seed, so all runs see the same gusts
    return [replace(template, dispersion=cases[i], case_id=i) for i in sorted(ids)]


def run_campaign(template: SimScenario, delta: float = 1.0, case_ids: Optional[Sequence[int]] = None,
                 engine: CampaignEngine | None = None) -> pd.DataFrame:
    """Metrics of every corner-case run, ordered by case id."""
    scenarios = campaign_scenarios(template, delta, case_ids)
    engine = engine or CampaignEngine()
    return metrics_frame(engine.map(run_case, scenarios))


def sensitivity_grid(template: SimScenario, noise_levels_dps: Sequence[float] = NOISE_LEVELS_DPS,
                     delays: Sequence[int] = DELAY_SAMPLES, delta: float = 1.0,
                     case_ids: Optional[Sequence[int]] = None,
                     engine: CampaignEngine | None = None) -> pd.DataFrame:
    """Full campaign in every (gyro noise, command delay) cell."""
    frames = []
    for noise in noise_levels_dps:
        for delay in delays:
            cell = replace(
                template,
                sensors=replace(template.sensors, gyro_3sigma=math.radians(noise)),
                tvc_delay_samples=int(delay),
            )
            frame = run_campaign(cell, delta, case_ids, engine)
            frame.insert(0, "delay_samples", int(delay))
            frame.insert(0, "noise_3sigma_dps", float(noise))
            frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def summarize_cells(grid: pd.DataFrame) -> pd.DataFrame:
    """Worst (maximum) metrics per sensitivity cell."""
    keys = ["noise_3sigma_dps", "delay_samples"]
    return grid.groupby(keys, sort=True).agg(
        max_rms_theta_err_rad=("rms_theta_err_rad", "max"),
        max_rms_beta_rate_rad_s=("rms_beta_rate_rad_s", "max"),
        max_abs_Qalpha_Pa_rad=("max_abs_Qalpha_Pa_rad", "max"),
        diverged_runs=("diverged", "sum"),
    ).reset_index()


def _pareto_scenario(kind: ControllerKind, bandwidth: float, template: SimScenario) -> SimScenario:
    if kind not in _SWEPT_BANDWIDTH:
        raise SimulationError(f"bandwidth sweeps are defined for pd_qdot and indi_lpf, not {kind.value}")
    command = template.command if template.command.kind == "step" else PARETO_STEP
    duration = template.duration or min(PARETO_DURATION, template.table.end - template.t_start)
    return replace(
        template,
        controller=kind,
        tuning=replace(template.tuning, **{_SWEPT_BANDWIDTH[kind]: float(bandwidth)}),
        dispersion=UncertaintySet.identity(),
        wind=WindConfig(enabled=False),
        command=command,
        duration=duration,
        case_id=0,
    )


def nominal_step_metrics(kind: ControllerKind, bandwidth: float, template: SimScenario) -> RunMetrics:
    return run_case(_pareto_scenario(kind, bandwidth, template))


@dataclass(frozen=True)
class ParetoResult:
    table: pd.DataFrame
    monotone: bool
    calibrated_bandwidth: Optional[float] = None
    target_rms: Optional[float] = None


def pareto_sweep(kind: ControllerKind, grid: Sequence[float] | None, template: SimScenario,
                 target_rms: float | None = None) -> ParetoResult:
    """Nominal step runs across a filter-bandwidth grid.

    `monotone` tells whether the pitch error never grows with bandwidth. When a
    target RMS pitch error is given, the bandwidth reproducing it is searched for
    as well.
    """
    grid = sorted(PARETO_GRIDS[kind] if grid is None else grid)
    rows = []
    for bandwidth in grid:
        m = nominal_step_metrics(kind, bandwidth, template)
        rows.append({
            "bandwidth_rad_s": float(bandwidth),
            "rms_theta_err_rad": m.rms_theta_err,
            "rms_beta_rate_rad_s": m.rms_beta_rate,
            "diverged": m.diverged,
        })
    table = pd.DataFrame(rows)
    errors = table["rms_theta_err_rad"].to_numpy(dtype=float)
    monotone = bool(not table["diverged"].any()
                    and np.all(np.diff(errors) <= 1e-9 * np.maximum(1.0, np.abs(errors[:-1]))))
    calibrated = None
    if target_rms is not None:
        calibrated = calibrate_bandwidth(kind, target_rms, template, (grid[0], grid[-1]))
    return ParetoResult(table, monotone, calibrated, target_rms)


def calibrate_bandwidth(kind: ControllerKind, target_rms: float, template: SimScenario,
                        bracket: Tuple[float, float]) -> float | None:
    """Bandwidth whose nominal step RMS pitch error equals target_rms (within 2 %), or None if not bracketed."""

    def mismatch(log_bandwidth: float) -> float:
        m = nominal_step_metrics(kind, math.exp(log_bandwidth), template)
        if m.diverged:
            return math.inf
        return m.rms_theta_err - target_rms

    lo, hi = math.log(bracket[0]), math.log(bracket[1])
    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)) or f_lo * f_hi > 0.0:
        logger.info("target RMS %.4g not bracketed by bandwidths %s", target_rms, bracket)
        return None
    root = brentq(mismatch, lo, hi, xtol=1e-3)
    return math.exp(root)
