"""Gain-scheduling rules. Gains follow the plant sign convention (control effectiveness -mu_c)."""
import math
from typing import Sequence, Tuple

import numpy as np
import pandas as pd

from application.trajectory.trajectory_service import plant_coefficients, schedule_nodes
from domain.entities.controller_kind import CONTROLLER_DEPENDENCIES, ControllerKind
from domain.entities.plant_coefficients import PlantCoefficients
from domain.entities.trajectory_point import TrajectoryPoint, TrajectoryTable
from domain.entities.tuning import GainSchedule, GainSet, TuningSpec
from domain.errors import TuningError


def _check_effectiveness(coeffs: PlantCoefficients, t: float | None = None):
    if coeffs.mu_c == 0.0 or not math.isfinite(coeffs.mu_c):
        where = "" if t is None else f" at t={t}"
        raise TuningError(f"control effectiveness mu_c is zero{where}")


def pd_node_gains(coeffs: PlantCoefficients, spec: TuningSpec) -> Tuple[float, float]:
    """Pole placement on the simplified attitude plant: returns (kP, kD)."""
    _check_effectiveness(coeffs)
    w = spec.omega_theta
    kP = -(coeffs.mu_alpha + w * w) / coeffs.mu_c
    kD = (coeffs.l_alpha * coeffs.mu_alpha / coeffs.V - 2.0 * spec.zeta * w) / coeffs.mu_c
    return kP, kD


def pd_qdot_node_gains(coeffs: PlantCoefficients, spec: TuningSpec) -> Tuple[float, float, float]:
    """Pole placement plus steady-state gain G0 with acceleration feedback: returns (kP, kA, kD)."""
    _check_effectiveness(coeffs)
    if spec.G0 == 1.0:
        raise TuningError("G0 = 1 has no finite proportional gain")
    w = spec.omega_theta
    kP = coeffs.mu_alpha / coeffs.mu_c * spec.G0 / (1.0 - spec.G0)
    kA = (1.0 + (coeffs.mu_alpha + coeffs.mu_c * kP) / (w * w)) / coeffs.mu_c
    kD = (coeffs.l_alpha * coeffs.mu_alpha / coeffs.V
          - 2.0 * spec.zeta * w * (1.0 - coeffs.mu_c * kA)) / coeffs.mu_c
    return kP, kA, kD


def indi_outer_gains(spec: TuningSpec) -> Tuple[float, float]:
    """Outer PD around the linearised double integrator: (omega^2, 2*zeta*omega)."""
    return spec.omega_theta ** 2, 2.0 * spec.zeta * spec.omega_theta


def tune_pd(nodes: Sequence[TrajectoryPoint], spec: TuningSpec) -> GainSchedule:
    kP, kD, mu_c = [], [], []
    for point in nodes:
        coeffs = plant_coefficients(point)
        _check_effectiveness(coeffs, point.t)
        p, d = pd_node_gains(coeffs, spec)
        kP.append(p)
        kD.append(d)
        mu_c.append(coeffs.mu_c)
    return GainSchedule(times=tuple(p.t for p in nodes), kP=kP, kD=kD, mu_c=mu_c)


def tune_pd_qdot(nodes: Sequence[TrajectoryPoint], spec: TuningSpec) -> GainSchedule:
    kP, kA, kD, mu_c = [], [], [], []
    for point in nodes:
        coeffs = plant_coefficients(point)
        _check_effectiveness(coeffs, point.t)
        p, a, d = pd_qdot_node_gains(coeffs, spec)
        kP.append(p)
        kA.append(a)
        kD.append(d)
        mu_c.append(coeffs.mu_c)
    return GainSchedule(times=tuple(p.t for p in nodes), kP=kP, kD=kD, mu_c=mu_c, kA=kA)


def tune_indi(nodes: Sequence[TrajectoryPoint], spec: TuningSpec) -> GainSchedule:
    """Constant outer-loop gains; only the mu_c grid is scheduled."""
    kP, kD = indi_outer_gains(spec)
    mu_c = []
    for point in nodes:
        coeffs = plant_coefficients(point)
        _check_effectiveness(coeffs, point.t)
        mu_c.append(coeffs.mu_c)
    n = len(mu_c)
    return GainSchedule(times=tuple(p.t for p in nodes), kP=[kP] * n, kD=[kD] * n, mu_c=mu_c)


def tune_schedule(kind: ControllerKind, table: TrajectoryTable, spec: TuningSpec) -> GainSchedule:
    nodes = schedule_nodes(table, spec.n_nodes)
    if kind == ControllerKind.PD:
        return tune_pd(nodes, spec)
    if kind == ControllerKind.PD_QDOT:
        return tune_pd_qdot(nodes, spec)
    return tune_indi(nodes, spec)


def lookup_gains(schedule: GainSchedule, t: float) -> GainSet:
    """Linear interpolation between nodes, clamped to the first/last node outside the range."""
    times = schedule.times

    def interp(values):
        return float(np.interp(t, times, values))

    return GainSet(
        kP=interp(schedule.kP),
        kD=interp(schedule.kD),
        kA=None if schedule.kA is None else interp(schedule.kA),
        mu_c=interp(schedule.mu_c),
    )


def schedule_frame(schedule: GainSchedule) -> pd.DataFrame:
    """Gain table, one row per node (kA column only for laws that use it)."""
    columns = {"t": schedule.times, "kP": schedule.kP, "kD": schedule.kD}
    if schedule.kA is not None:
        columns["kA"] = schedule.kA
    columns["mu_c"] = schedule.mu_c
    return pd.DataFrame(columns)


def controller_dependencies(kind: ControllerKind) -> dict:
    """Model parameters and sensor signals a law needs on board."""
    parameters, signals = CONTROLLER_DEPENDENCIES[ControllerKind(kind)]
    return {"parameters": list(parameters), "measurements": list(signals)}
