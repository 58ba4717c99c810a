from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PlantState:
    """Rigid-body state: lateral drift z, lateral velocity w, pitch angle theta, pitch rate q."""

    z: float = 0.0
    w: float = 0.0
    theta: float = 0.0
    q: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.z, self.w, self.theta, self.q], dtype=float)


@dataclass(frozen=True)
class ActuatorState:
    """Nozzle deflection and deflection rate."""

    beta: float = 0.0
    beta_dot: float = 0.0
