"""Smooth synthetic ascent profile used when no trajectory file is supplied.

The window opens shortly after lift-off (vehicle already at speed) and spans the
transonic/max-Q phase of a small solid first stage. Aerodynamic instability stays
bounded away from zero over the window so acceleration-feedback laws remain well
conditioned.
"""
import math
from dataclasses import dataclass

import numpy as np

from domain.entities.trajectory_point import TrajectoryPoint, TrajectoryTable
from domain.errors import TrajectoryError


@dataclass(frozen=True)
class SyntheticProfile:
    m0: float = 120_000.0  # kg
    burn_fraction: float = 0.625  # propellant mass fraction consumed over the window
    J0: float = 5.0e6  # kg m^2, scales with mass
    g: float = 9.81
    T0: float = 3.0e6  # N
    thrust_growth: float = 0.08  # fractional increase over the window
    l_c0: float = 12.0
    l_c_growth: float = 2.0
    l_alpha0: float = 3.5
    l_alpha_growth: float = 0.5
    S: float = 7.0  # m^2
    C_N_alpha: float = 2.5  # 1/rad
    rho0: float = 1.1
    rho_decay: float = 4.198
    rho_shape: float = 1.608
    V0: float = 150.0
    V1: float = 1100.0
    m_n: float = 600.0
    l_n: float = 0.8
    J_n: float = 500.0
    theta0_start: float = math.radians(90.0)
    theta0_end: float = math.radians(45.0)


def synth_reference_trajectory(duration: float = 80.0, profile: SyntheticProfile = SyntheticProfile()) -> TrajectoryTable:
    """Tabulate the profile every second over [0, duration]."""
    if not math.isfinite(duration) or duration <= 0.0:
        raise TrajectoryError(f"duration must be positive, got {duration}")
    n_points = max(int(math.ceil(duration)) + 1, 2)
    times = np.linspace(0.0, duration, n_points)
    s = times / duration
    m = profile.m0 * (1.0 - profile.burn_fraction * s)
    J = profile.J0 * m / profile.m0
    T = profile.T0 * (1.0 + profile.thrust_growth * s)
    l_c = profile.l_c0 + profile.l_c_growth * s
    l_alpha = profile.l_alpha0 + profile.l_alpha_growth * s
    rho = profile.rho0 * np.exp(-profile.rho_decay * s ** profile.rho_shape)
    V = profile.V0 + (profile.V1 - profile.V0) * s
    theta0 = profile.theta0_start + (profile.theta0_end - profile.theta0_start) * s

    points = tuple(
        TrajectoryPoint(
            t=times[k], m=m[k], J=J[k], g=profile.g, T=T[k], l_c=l_c[k], l_alpha=l_alpha[k],
            S=profile.S, C_N_alpha=profile.C_N_alpha, rho=rho[k], V=V[k],
            m_n=profile.m_n, l_n=profile.l_n, J_n=profile.J_n, theta0=theta0[k],
        )
        for k in range(n_points)
    )
    return TrajectoryTable(points)
