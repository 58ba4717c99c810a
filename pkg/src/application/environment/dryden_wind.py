"""First-order Dryden-type lateral wind, discretised with an exact zero-order hold."""
import math
from typing import Optional

import numpy as np
from scipy.linalg import solve_discrete_lyapunov

# Shaping filter G_w(s) = WIND_GAIN / (s + WIND_POLE)
WIND_GAIN = 3.54
WIND_POLE = 0.32


class DrydenWind:
    """Wind generator driven by scaled standard-normal samples.

    The driving noise scale is either given directly (`intensity`) or chosen so
    the stationary standard deviation of the output equals `sigma`.
    """

    def __init__(self, dt: float, rng: Optional[np.random.Generator] = None, sigma: float = 3.0,
                 intensity: Optional[float] = None):
        if dt <= 0.0:
            raise ValueError("wind sample period must be positive")
        self.dt = dt
        self.rng = rng
        self.phi = math.exp(-WIND_POLE * dt)
        self.gamma = WIND_GAIN / WIND_POLE * (1.0 - self.phi)
        if intensity is None:
            intensity = sigma / math.sqrt(self.stationary_variance(1.0))
        self.intensity = intensity
        self.state = 0.0

    def stationary_variance(self, intensity: Optional[float] = None) -> float:
        """Variance of the output for white input of the given scale (discrete Lyapunov)."""
        scale = self.intensity if intensity is None else intensity
        solution = solve_discrete_lyapunov(np.array([[self.phi]]), np.array([[(self.gamma * scale) ** 2]]))
        return float(solution[0, 0])

    def advance(self, u: float) -> float:
        """Advance one sample with input u held constant; returns the new wind speed."""
        self.state = self.phi * self.state + self.gamma * u
        return self.state

    def step(self) -> float:
        sample = self.rng.standard_normal() if self.rng is not None else 0.0
        return self.advance(self.intensity * sample)

    def reset(self):
        self.state = 0.0


def dryden_step(wind: DrydenWind) -> float:
    return wind.step()
