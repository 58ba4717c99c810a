import math
from dataclasses import dataclass, field
from typing import Optional

from domain.entities.controller_kind import ControllerKind
from domain.entities.trajectory_point import TrajectoryTable
from domain.entities.tuning import TuningSpec
from domain.entities.uncertainty_set import UncertaintySet
from domain.errors import ConfigError


@dataclass(frozen=True)
class WindConfig:
    enabled: bool = True
    seed: int = 1
    sigma: float = 3.0  # stationary standard deviation of v_w, m/s
    intensity: Optional[float] = None  # raw white-noise scale, overrides sigma

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ConfigError("wind.sigma must be non-negative")
        if self.intensity is not None and self.intensity < 0.0:
            raise ConfigError("wind.intensity must be non-negative")


@dataclass(frozen=True)
class SensorConfig:
    gyro_3sigma: float = 0.0  # rad/s
    attitude_3sigma: float = 0.0  # rad

    def __post_init__(self):
        if self.gyro_3sigma < 0.0 or self.attitude_3sigma < 0.0:
            raise ConfigError("sensor noise levels must be non-negative")


@dataclass(frozen=True)
class RateConfig:
    f_gnc: float = 25.0
    f_wind: float = 20.0
    f_int: float = 500.0

    def __post_init__(self):
        for name in ("f_gnc", "f_wind", "f_int"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"rates.{name} must be positive")
        for name in ("f_gnc", "f_wind"):
            ratio = self.f_int / getattr(self, name)
            if abs(ratio - round(ratio)) > 1e-9:
                raise ConfigError(f"rates.f_int must be an integer multiple of rates.{name}")

    @property
    def substeps_per_gnc(self) -> int:
        return int(round(self.f_int / self.f_gnc))

    @property
    def substeps_per_wind(self) -> int:
        return int(round(self.f_int / self.f_wind))


@dataclass(frozen=True)
class CommandProfile:
    """Pitch command: 'zero' (regulation) or a 'step' of `amplitude` rad at `step_time` s."""

    kind: str = "zero"
    step_time: float = 0.0
    amplitude: float = 0.0

    def __post_init__(self):
        if self.kind not in ("zero", "step"):
            raise ConfigError(f"command.kind must be 'zero' or 'step', got '{self.kind}'")

    def theta_cmd(self, t: float) -> float:
        if self.kind == "step" and t >= self.step_time:
            return self.amplitude
        return 0.0


@dataclass(frozen=True)
class ActuatorLimits:
    enabled: bool = False
    beta_max: float = math.radians(6.0)
    beta_rate_max: float = math.radians(20.0)


@dataclass(frozen=True)
class SimScenario:
    """Everything a single closed-loop run needs."""

    table: TrajectoryTable
    controller: ControllerKind = ControllerKind.INDI_LPF
    tuning: TuningSpec = field(default_factory=TuningSpec)
    dispersion: UncertaintySet = field(default_factory=UncertaintySet.identity)
    wind: WindConfig = field(default_factory=WindConfig)
    sensors: SensorConfig = field(default_factory=SensorConfig)
    tvc_delay_samples: int = 0
    rates: RateConfig = field(default_factory=RateConfig)
    duration: Optional[float] = None  # None: until the end of the table
    start_time: Optional[float] = None  # None: start of the table
    command: CommandProfile = field(default_factory=CommandProfile)
    master_seed: int = 0
    case_id: int = 0
    limits: ActuatorLimits = field(default_factory=ActuatorLimits)

    def __post_init__(self):
        if self.tvc_delay_samples < 0:
            raise ConfigError("delays.tvc_samples must be non-negative")
        start = self.t_start
        if start < self.table.start or start >= self.table.end:
            raise ConfigError(f"start time {start} outside the trajectory window")
        if self.run_duration <= 0.0 or start + self.run_duration > self.table.end + 1e-9:
            raise ConfigError("run duration must be positive and end inside the trajectory window")
        if self.gnc_ticks < 1:
            raise ConfigError("run duration is shorter than one GNC period")

    @property
    def t_start(self) -> float:
        return self.table.start if self.start_time is None else float(self.start_time)

    @property
    def run_duration(self) -> float:
        if self.duration is None:
            return self.table.end - self.t_start
        return float(self.duration)

    @property
    def gnc_ticks(self) -> int:
        """Whole GNC periods inside the run; a trailing partial period is not simulated."""
        return int(math.floor(self.run_duration * self.rates.f_gnc + 1e-9))
