import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from domain.errors import TuningError

BETA0_SOURCES = ("filter", "actuator")


@dataclass(frozen=True)
class TuningSpec:
    """Closed-loop design targets and controller filter bandwidths (rad/s)."""

    omega_theta: float = 2.5
    zeta: float = 0.8
    G0: float = 1.05
    omega_qdot: float = 15.0
    omega_beta: float = 10.0
    omega_beta0: float = 30.0
    n_nodes: int = 9
    beta0_source: str = "filter"

    def __post_init__(self):
        if not 0.0 < self.zeta < 2.0:
            raise TuningError(f"zeta must lie in (0, 2), got {self.zeta}")
        for name in ("omega_theta", "omega_qdot", "omega_beta", "omega_beta0"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise TuningError(f"'{name}' must be positive, got {value}")
        if not math.isfinite(self.G0) or self.G0 == 1.0:
            raise TuningError("G0 must be finite and different from 1")
        if self.n_nodes < 2:
            raise TuningError("a gain schedule needs at least 2 nodes")
        if self.beta0_source not in BETA0_SOURCES:
            raise TuningError(f"beta0_source must be one of {BETA0_SOURCES}")


@dataclass(frozen=True)
class GainSet:
    kP: float
    kD: float
    kA: Optional[float]
    mu_c: float


@dataclass(frozen=True, eq=False)
class GainSchedule:
    """Gains at the tuning nodes; kA is None for laws without acceleration feedback."""

    times: Tuple[float, ...]
    kP: Tuple[float, ...]
    kD: Tuple[float, ...]
    mu_c: Tuple[float, ...]
    kA: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        n = len(self.times)
        arrays = {"kP": self.kP, "kD": self.kD, "mu_c": self.mu_c}
        if self.kA is not None:
            arrays["kA"] = self.kA
        for name, values in arrays.items():
            if len(values) != n:
                raise TuningError(f"schedule column '{name}' has {len(values)} entries, expected {n}")
        if n < 1 or np.any(np.diff(self.times) <= 0.0):
            raise TuningError("schedule times must be non-empty and strictly increasing")
        for name in ("times", "kP", "kD", "mu_c"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        if self.kA is not None:
            object.__setattr__(self, "kA", tuple(float(v) for v in self.kA))

    def __len__(self) -> int:
        return len(self.times)
