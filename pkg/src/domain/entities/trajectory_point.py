import math
from dataclasses import astuple, dataclass, fields
from typing import Tuple

import numpy as np

from domain.errors import TrajectoryError

# Column order of the trajectory CSV and of TrajectoryPoint.as_array()
TRAJECTORY_COLUMNS: Tuple[str, ...] = (
    "t", "m", "J", "g", "T", "l_c", "l_alpha", "S",
    "C_N_alpha", "rho", "V", "m_n", "l_n", "J_n", "theta0",
)

_POSITIVE = ("m", "J", "V", "S")
_NON_NEGATIVE = ("T", "rho", "m_n", "J_n")


@dataclass(frozen=True)
class TrajectoryPoint:
    """Vehicle and flight-condition parameters at one instant of the ascent (SI units)."""

    t: float
    m: float
    J: float
    g: float
    T: float
    l_c: float
    l_alpha: float
    S: float
    C_N_alpha: float
    rho: float
    V: float
    m_n: float
    l_n: float
    J_n: float
    theta0: float

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            if not math.isfinite(value):
                raise TrajectoryError(f"non-finite value for '{f.name}' at t={self.t}")
            object.__setattr__(self, f.name, value)
        for name in _POSITIVE:
            if getattr(self, name) <= 0.0:
                raise TrajectoryError(f"'{name}' must be positive at t={self.t}")
        for name in _NON_NEGATIVE:
            if getattr(self, name) < 0.0:
                raise TrajectoryError(f"'{name}' must be non-negative at t={self.t}")

    @property
    def dynamic_pressure(self) -> float:
        return 0.5 * self.rho * self.V ** 2

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values) -> "TrajectoryPoint":
        if len(values) != len(TRAJECTORY_COLUMNS):
            raise TrajectoryError(
                f"expected {len(TRAJECTORY_COLUMNS)} values, got {len(values)}"
            )
        return cls(*(float(v) for v in values))


@dataclass(frozen=True)
class TrajectoryTable:
    """Ordered sequence of trajectory points with strictly increasing time."""

    points: Tuple[TrajectoryPoint, ...]

    def __post_init__(self):
        points = tuple(self.points)
        if len(points) < 2:
            raise TrajectoryError("a trajectory table needs at least 2 points")
        matrix = np.vstack([p.as_array() for p in points])
        if np.any(np.diff(matrix[:, 0]) <= 0.0):
            raise TrajectoryError("trajectory times must be strictly increasing")
        matrix.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_matrix", matrix)

    @property
    def matrix(self) -> np.ndarray:
        """Read-only (N, 15) array in TRAJECTORY_COLUMNS order."""
        return self._matrix

    @property
    def times(self) -> np.ndarray:
        return self._matrix[:, 0]

    @property
    def start(self) -> float:
        return float(self._matrix[0, 0])

    @property
    def end(self) -> float:
        return float(self._matrix[-1, 0])

    @property
    def duration(self) -> float:
        return self.end - self.start

    def __len__(self) -> int:
        return len(self.points)
