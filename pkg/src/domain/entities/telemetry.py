from dataclasses import dataclass, fields
from typing import Tuple

import numpy as np

# Exported telemetry CSV header, in order
TELEMETRY_COLUMNS: Tuple[str, ...] = (
    "t", "theta_cmd", "theta", "theta_err", "q", "qdot_est", "w", "z", "alpha",
    "Qalpha", "beta_cmd", "beta", "beta_dot", "nu", "v_w",
)


@dataclass(frozen=True, eq=False)
class TelemetryLog:
    """Per-GNC-tick time histories of one run. nu is NaN for laws that do not define it."""

    t: np.ndarray
    theta_cmd: np.ndarray
    theta: np.ndarray
    theta_err: np.ndarray
    q: np.ndarray
    qdot_est: np.ndarray
    w: np.ndarray
    z: np.ndarray
    alpha: np.ndarray
    Qalpha: np.ndarray
    beta_cmd: np.ndarray
    beta: np.ndarray
    beta_dot: np.ndarray
    nu: np.ndarray
    v_w: np.ndarray
    qdot: np.ndarray  # true angular acceleration, not exported

    def __post_init__(self):
        n = len(self.t)
        for f in fields(self):
            values = np.asarray(getattr(self, f.name), dtype=float)
            if values.shape != (n,):
                raise ValueError(f"telemetry column '{f.name}' has shape {values.shape}, expected ({n},)")
            object.__setattr__(self, f.name, values)

    def __len__(self) -> int:
        return len(self.t)

    def columns(self) -> dict:
        return {name: getattr(self, name) for name in TELEMETRY_COLUMNS}
