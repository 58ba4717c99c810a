"""Interpolation, dispersion and coefficient extraction on trajectory tables."""
import math
from dataclasses import replace
from typing import List

import numpy as np

from domain.entities.plant_coefficients import PlantCoefficients
from domain.entities.trajectory_point import TRAJECTORY_COLUMNS, TrajectoryPoint, TrajectoryTable
from domain.entities.uncertainty_set import DISPERSED_PARAMETERS, UncertaintySet
from domain.errors import TrajectoryError

# Slack on the table window for sample times accumulated in floating point
_TIME_TOLERANCE = 1e-9

_COLUMN_INDEX = {name: i for i, name in enumerate(TRAJECTORY_COLUMNS)}


def sample_array(table: TrajectoryTable, t: float) -> np.ndarray:
    """Linear interpolation of every column at time t, returned in TRAJECTORY_COLUMNS order."""
    times = table.times
    if not math.isfinite(t) or t < times[0] - _TIME_TOLERANCE or t > times[-1] + _TIME_TOLERANCE:
        raise TrajectoryError(f"t={t} outside trajectory window [{times[0]}, {times[-1]}]")
    matrix = table.matrix
    i = int(np.searchsorted(times, t, side="right")) - 1
    i = min(max(i, 0), len(times) - 2)
    weight = (t - times[i]) / (times[i + 1] - times[i])
    if weight <= 0.0:
        row = matrix[i].copy()
    elif weight >= 1.0:
        row = matrix[i + 1].copy()
    else:
        row = matrix[i] + weight * (matrix[i + 1] - matrix[i])
        row[0] = t
    return row


def sample_params(table: TrajectoryTable, t: float) -> TrajectoryPoint:
    return TrajectoryPoint.from_array(sample_array(table, t))


def dispersion_factors(u: UncertaintySet) -> np.ndarray:
    """Per-column multipliers matching TRAJECTORY_COLUMNS (1 for undispersed columns)."""
    factors = np.ones(len(TRAJECTORY_COLUMNS))
    for name in DISPERSED_PARAMETERS:
        factors[_COLUMN_INDEX[name]] = u.multipliers[name]
    return factors


def apply_dispersion(point: TrajectoryPoint, u: UncertaintySet) -> TrajectoryPoint:
    """Scale the dispersed parameters of a point; all others are carried over unchanged."""
    return replace(point, **{name: getattr(point, name) * u.multipliers[name] for name in DISPERSED_PARAMETERS})


def plant_coefficients(point: TrajectoryPoint) -> PlantCoefficients:
    Q = point.dynamic_pressure
    aero_force = point.S * point.C_N_alpha * Q
    twd_force = point.m_n * point.l_n
    return PlantCoefficients(
        mu_alpha=point.l_alpha * aero_force / point.J,
        mu_c=point.l_c * point.T / point.J,
        mu_n=(twd_force * point.l_c + point.J_n) / point.J,
        n_alpha=aero_force / point.m,
        n_c=point.T / point.m,
        n_n=twd_force / point.m,
        V=point.V,
        l_alpha=point.l_alpha,
        g=point.g,
        theta0=point.theta0,
    )


def schedule_nodes(table: TrajectoryTable, n_nodes: int) -> List[TrajectoryPoint]:
    """Nominal points at n_nodes evenly spaced instants covering the whole table."""
    if n_nodes < 2:
        raise TrajectoryError("at least 2 schedule nodes are required")
    times = np.linspace(table.start, table.end, n_nodes)
    return [sample_params(table, float(t)) for t in times]


def max_q_time(table: TrajectoryTable) -> float:
    """Node time of the largest dynamic pressure."""
    matrix = table.matrix
    q = 0.5 * matrix[:, _COLUMN_INDEX["rho"]] * matrix[:, _COLUMN_INDEX["V"]] ** 2
    return float(table.times[int(np.argmax(q))])
