"""Margins over (corner case x flight time) grids and the margin budget table."""
import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from application.campaign.campaign_engine import CampaignEngine
from application.control.tuning import indi_outer_gains, tune_schedule
from application.linear.closed_loop_model import (
    NU_TO_THETA,
    LinearizationOptions,
    linearize_closed_loop,
    open_loop_response,
)
from application.linear.frequency_response import freq_response, log_grid
from application.linear.transfer_functions import double_integrator_loop
from application.stability.margins import gain_phase_margins
from domain.entities.scenario import SimScenario
from domain.entities.trajectory_point import TrajectoryTable
from domain.entities.tuning import GainSchedule
from domain.entities.uncertainty_set import UncertaintySet
from domain.errors import SimulationError

logger = logging.getLogger(__name__)

SWEEP_SPACING = 2.5
NOMINAL_CASE_ID = -1
SWEEP_COLUMNS = ("t", "case_id", "pm_deg", "gm_db", "wgc", "wpc", "stable", "error")


def sweep_times(table: TrajectoryTable, spacing: float = SWEEP_SPACING) -> np.ndarray:
    """Instants every `spacing` seconds from the start of the table (33 over 80 s)."""
    count = int(math.floor(table.duration / spacing + 1e-9)) + 1
    return table.start + spacing * np.arange(count)


@dataclass(frozen=True)
class SweepCell:
    template: SimScenario
    schedule: GainSchedule
    case_id: int
    dispersion: UncertaintySet
    t: float
    channel: str
    options: LinearizationOptions
    omega: tuple


def evaluate_cell(cell: SweepCell) -> dict:
    scenario = replace(cell.template, dispersion=cell.dispersion, case_id=cell.case_id)
    row = {"t": cell.t, "case_id": cell.case_id}
    try:
        system = linearize_closed_loop(scenario, cell.t, cell.channel, cell.options, cell.schedule)
        loop = open_loop_response(system, scenario.tuning, cell.channel, np.asarray(cell.omega))
        result = gain_phase_margins(loop)
    except SimulationError as exc:
        logger.warning("margin cell (case %d, t=%.2f) failed: %s", cell.case_id, cell.t, exc)
        row.update(pm_deg=math.nan, gm_db=math.nan, wgc=math.nan, wpc=math.nan, stable=False, error=str(exc))
        return row
    row.update(pm_deg=result.phase_margin, gm_db=result.gain_margin, wgc=result.omega_gc,
               wpc=result.omega_pc, stable=result.stable, error="")
    return row


def margin_sweep(template: SimScenario, cases: Sequence[UncertaintySet], times: Sequence[float],
                 channel: str = NU_TO_THETA, options: LinearizationOptions | None = None,
                 omega=None, engine: CampaignEngine | None = None,
                 case_ids: Sequence[int] | None = None) -> pd.DataFrame:
    """One row per (case, t), ordered by case then time."""
    schedule = tune_schedule(template.controller, template.table, template.tuning)
    omega = tuple(log_grid() if omega is None else np.asarray(omega, dtype=float))
    options = options or LinearizationOptions()
    case_ids = list(range(len(cases))) if case_ids is None else list(case_ids)
    cells = [
        SweepCell(template, schedule, case_id, u, float(t), channel, options, omega)
        for case_id, u in zip(case_ids, cases)
        for t in times
    ]
    engine = engine or CampaignEngine()
    rows = engine.map(evaluate_cell, cells)
    return pd.DataFrame(rows, columns=list(SWEEP_COLUMNS))


def nominal_sweep(template: SimScenario, times: Sequence[float], **kwargs) -> pd.DataFrame:
    return margin_sweep(template, [UncertaintySet.identity()], times, case_ids=[NOMINAL_CASE_ID], **kwargs)


def closest_to_zero(values) -> float:
    """Gain margin nearest to 0 dB (either sign); NaN entries ignored."""
    values = np.asarray(values, dtype=float)
    values = values[~np.isnan(values)]
    if values.size == 0:
        return math.nan
    return float(values[np.argmin(np.abs(values))])


def summarize_sweep(cases: pd.DataFrame, nominal: pd.DataFrame) -> pd.DataFrame:
    """Per-time nominal and worst-case margins."""
    rows = []
    for t, group in cases.groupby("t", sort=True):
        nominal_row = nominal[np.isclose(nominal["t"], t)]
        pm = group["pm_deg"]
        rows.append({
            "t": t,
            "nominal_pm_deg": float(nominal_row["pm_deg"].iloc[0]) if len(nominal_row) else math.nan,
            "nominal_gm_db": float(nominal_row["gm_db"].iloc[0]) if len(nominal_row) else math.nan,
            "worst_pm_deg": float(pm.min()) if pm.notna().any() else math.nan,
            "worst_pm_case": int(group.loc[pm.idxmin(), "case_id"]) if pm.notna().any() else -1,
            "worst_gm_db": closest_to_zero(group["gm_db"]),
            "all_stable": bool(group["stable"].all()),
            "failed_cells": int((group["error"] != "").sum()),
        })
    return pd.DataFrame(rows)


def _budget_row(label: str, frame: pd.DataFrame) -> dict:
    frame = frame[frame["pm_deg"].notna()]
    if frame.empty:
        return {"row": label, "pm_deg": math.nan, "gm_db": math.nan, "t_pm": math.nan, "case_pm": -1,
                "t_gm": math.nan, "case_gm": -1}
    pm_index = frame["pm_deg"].idxmin()
    gm = frame["gm_db"].to_numpy(dtype=float)
    gm_index = frame.index[int(np.argmin(np.abs(gm)))]
    return {
        "row": label,
        "pm_deg": float(frame.loc[pm_index, "pm_deg"]),
        "gm_db": float(frame.loc[gm_index, "gm_db"]),
        "t_pm": float(frame.loc[pm_index, "t"]),
        "case_pm": int(frame.loc[pm_index, "case_id"]),
        "t_gm": float(frame.loc[gm_index, "t"]),
        "case_gm": int(frame.loc[gm_index, "case_id"]),
    }


def margin_budget(template: SimScenario, cases: pd.DataFrame, nominal: pd.DataFrame,
                  node_times: Optional[Sequence[float]] = None) -> pd.DataFrame:
    """Stability margin budget, from the ideal double integrator down to the worst corner case.

    Rows at the schedule nodes isolate the dispersion effect; rows over the full
    time grid add the mismatch of the interpolated mu_c between nodes.
    """
    kP, kD = indi_outer_gains(template.tuning)
    ideal = gain_phase_margins(freq_response(double_integrator_loop(kP, kD)))
    if node_times is None:
        node_times = tune_schedule(template.controller, template.table, template.tuning).times
    node_times = np.asarray(node_times, dtype=float)

    def at_nodes(frame):
        mask = np.any(np.isclose(frame["t"].to_numpy()[:, None], node_times[None, :]), axis=1)
        return frame[mask]

    rows = [
        {"row": "double_integrator", "pm_deg": ideal.phase_margin, "gm_db": ideal.gain_margin,
         "t_pm": math.nan, "case_pm": -1, "t_gm": math.nan, "case_gm": -1},
        _budget_row("nominal_at_nodes", at_nodes(nominal)),
        _budget_row("nominal_with_interpolation", nominal),
        _budget_row("worst_case_at_nodes", at_nodes(cases)),
        _budget_row("worst_case_with_interpolation", cases),
    ]
    return pd.DataFrame(rows)
