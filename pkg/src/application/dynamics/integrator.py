from typing import Callable

import numpy as np

from domain.errors import DivergenceError

Derivative = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(f: Derivative, x, t: float, dt: float):
    """Classical fourth-order Runge-Kutta step; inputs captured by f stay constant over dt."""
    if dt <= 0.0:
        raise ValueError("integration step must be positive")
    half = 0.5 * dt
    k1 = f(t, x)
    k2 = f(t + half, x + half * k1)
    k3 = f(t + half, x + half * k2)
    k4 = f(t + dt, x + dt * k3)
    increment = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(increment)):
        raise DivergenceError(f"non-finite derivative at t={t}", t=t, state=x)
    return x + increment
