import json
import logging
import math
import typing
from dataclasses import dataclass, field, fields, is_dataclass
from pathlib import Path
from typing import List, Optional

from domain.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrajectorySection:
    path: Optional[str] = None  # None: synthetic reference trajectory
    synthetic_duration: float = 80.0
    duration: Optional[float] = None
    start_time: Optional[float] = None


@dataclass(frozen=True)
class ControllerSection:
    kind: str = "indi_lpf"


@dataclass(frozen=True)
class TuningSection:
    omega_theta: float = 2.5
    zeta: float = 0.8
    G0: float = 1.05
    omega_qdot: float = 15.0
    omega_beta: float = 10.0
    omega_beta0: float = 30.0
    nodes: int = 9
    beta0_source: str = "filter"


@dataclass(frozen=True)
class WindSection:
    enabled: bool = True
    seed: int = 1
    sigma: float = 3.0
    intensity: Optional[float] = None


@dataclass(frozen=True)
class SensorsSection:
    gyro_3sigma_dps: float = 0.0
    attitude_3sigma_deg: float = 0.0


@dataclass(frozen=True)
class DelaysSection:
    tvc_samples: int = 0


@dataclass(frozen=True)
class RatesSection:
    f_gnc: float = 25.0
    f_wind: float = 20.0
    f_int: float = 500.0


@dataclass(frozen=True)
class CommandSection:
    kind: str = "zero"
    step_time: float = 0.0
    amplitude_deg: float = 0.0


@dataclass(frozen=True)
class SeedsSection:
    master: int = 0


@dataclass(frozen=True)
class LimitsSection:
    enabled: bool = False
    beta_max_deg: float = 6.0
    beta_rate_max_dps: float = 20.0


@dataclass(frozen=True)
class CampaignSection:
    delta: float = 1.0
    workers: int = 1
    case_ids: Optional[List[int]] = None


@dataclass(frozen=True)
class LinearizationSection:
    channel: str = "nu_to_theta"
    time: Optional[float] = None  # None: max-Q instant
    actuator: bool = True
    twd: bool = True
    drift: bool = True
    filters: bool = True
    lpf: Optional[bool] = None
    exact_mu_c: bool = False
    pade: bool = False
    omega_min: float = 1e-2
    omega_max: float = 1e3
    omega_points: int = 200
    spacing: float = 2.5


@dataclass(frozen=True)
class ScenarioConfig:
    trajectory: TrajectorySection = field(default_factory=TrajectorySection)
    controller: ControllerSection = field(default_factory=ControllerSection)
    tuning: TuningSection = field(default_factory=TuningSection)
    wind: WindSection = field(default_factory=WindSection)
    sensors: SensorsSection = field(default_factory=SensorsSection)
    delays: DelaysSection = field(default_factory=DelaysSection)
    rates: RatesSection = field(default_factory=RatesSection)
    command: CommandSection = field(default_factory=CommandSection)
    seeds: SeedsSection = field(default_factory=SeedsSection)
    limits: LimitsSection = field(default_factory=LimitsSection)
    campaign: CampaignSection = field(default_factory=CampaignSection)
    linearization: LinearizationSection = field(default_factory=LinearizationSection)


_CHOICES = {
    "controller.kind": ("pd", "pd_qdot", "indi", "indi_lpf"),
    "tuning.beta0_source": ("filter", "actuator"),
    "command.kind": ("zero", "step"),
    "linearization.channel": ("nu_to_theta", "thetaerr_to_theta"),
}

_POSITIVE = (
    "trajectory.synthetic_duration", "trajectory.duration",
    "tuning.omega_theta", "tuning.zeta", "tuning.omega_qdot", "tuning.omega_beta",
    "tuning.omega_beta0", "rates.f_gnc", "rates.f_wind", "rates.f_int",
    "campaign.workers", "limits.beta_max_deg", "limits.beta_rate_max_dps",
    "linearization.omega_min", "linearization.omega_max", "linearization.omega_points",
    "linearization.spacing",
)

_NON_NEGATIVE = (
    "trajectory.start_time", "wind.sigma", "wind.intensity", "wind.seed",
    "sensors.gyro_3sigma_dps", "sensors.attitude_3sigma_deg", "delays.tvc_samples",
    "seeds.master", "campaign.delta", "linearization.time",
)


def _check_scalar(key, value, hint):
    if hint is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{key}: expected a boolean, got {value!r}")
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return value
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected a number, got {value!r}")
        if not math.isfinite(value):
            raise ConfigError(f"{key}: must be finite")
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise ConfigError(f"{key}: expected a string, got {value!r}")
        return value
    raise ConfigError(f"{key}: unsupported type {hint}")


def _check_value(key, value, hint):
    if typing.get_origin(hint) is typing.Union:
        if value is None:
            return None
        inner = next(a for a in typing.get_args(hint) if a is not type(None))
        return _check_value(key, value, inner)
    if typing.get_origin(hint) in (list, List):
        if not isinstance(value, list):
            raise ConfigError(f"{key}: expected a list, got {value!r}")
        (item,) = typing.get_args(hint)
        return [_check_scalar(f"{key}[{i}]", v, item) for i, v in enumerate(value)]
    if value is None:
        raise ConfigError(f"{key}: value is required")
    return _check_scalar(key, value, hint)


def _build_section(name, cls, raw):
    if not isinstance(raw, dict):
        raise ConfigError(f"{name}: expected an object, got {raw!r}")
    hints = typing.get_type_hints(cls)
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"{name}.{unknown[0]}: unknown key")
    values = {key: _check_value(f"{name}.{key}", value, hints[key]) for key, value in raw.items()}
    return cls(**values)


def _validate_ranges(config: ScenarioConfig):
    def get(dotted):
        section, key = dotted.split(".")
        return getattr(getattr(config, section), key)

    for dotted, choices in _CHOICES.items():
        if get(dotted) not in choices:
            raise ConfigError(f"{dotted}: must be one of {', '.join(choices)}, got {get(dotted)!r}")
    for dotted in _POSITIVE:
        value = get(dotted)
        if value is not None and value <= 0:
            raise ConfigError(f"{dotted}: must be positive, got {value}")
    for dotted in _NON_NEGATIVE:
        value = get(dotted)
        if value is not None and value < 0:
            raise ConfigError(f"{dotted}: must be non-negative, got {value}")
    if config.tuning.nodes < 2:
        raise ConfigError("tuning.nodes: at least 2 nodes are required")
    if config.tuning.zeta >= 2.0:
        raise ConfigError("tuning.zeta: must be below 2")
    if config.tuning.G0 == 1.0:
        raise ConfigError("tuning.G0: must differ from 1")
    if config.linearization.omega_min >= config.linearization.omega_max:
        raise ConfigError("linearization.omega_min: must be below linearization.omega_max")
    for name in ("f_gnc", "f_wind"):
        ratio = config.rates.f_int / getattr(config.rates, name)
        if abs(ratio - round(ratio)) > 1e-9:
            raise ConfigError(f"rates.f_int: must be an integer multiple of rates.{name}")
    case_ids = config.campaign.case_ids
    if case_ids is not None and any(not 0 <= c < 256 for c in case_ids):
        raise ConfigError("campaign.case_ids: corner-case ids must lie in [0, 255]")


def build_config(raw: dict) -> ScenarioConfig:
    """Validate a raw JSON document and return the typed configuration.

    Args:
        raw: Parsed JSON object; missing sections and keys take their defaults.

    Returns:
        The ScenarioConfig.

    Raises:
        ConfigError: naming the dotted key on unknown keys, wrong types or bad ranges.
    """
    if not isinstance(raw, dict):
        raise ConfigError("scenario configuration must be a JSON object")
    sections = {f.name: f for f in fields(ScenarioConfig)}
    unknown = sorted(set(raw) - set(sections))
    if unknown:
        raise ConfigError(f"{unknown[0]}: unknown section")
    hints = typing.get_type_hints(ScenarioConfig)
    values = {name: _build_section(name, hints[name], body) for name, body in raw.items()}
    config = ScenarioConfig(**values)
    _validate_ranges(config)
    return config


def parse_override(item: str):
    """Split 'section.key=value' into ('section', 'key', value), JSON-decoding the value."""
    if "=" not in item:
        raise ConfigError(f"override '{item}' must have the form section.key=value")
    dotted, text = item.split("=", 1)
    parts = dotted.strip().split(".")
    if len(parts) != 2 or not all(parts):
        raise ConfigError(f"override key '{dotted}' must have the form section.key")
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    return parts[0], parts[1], value


def apply_overrides(raw: dict, overrides) -> dict:
    merged = {name: dict(body) if isinstance(body, dict) else body for name, body in raw.items()}
    for item in overrides or ():
        section, key, value = parse_override(item)
        body = merged.setdefault(section, {})
        if not isinstance(body, dict):
            raise ConfigError(f"{section}: expected an object")
        body[key] = value
    return merged


def load_config(path=None, overrides=()) -> ScenarioConfig:
    """Read a scenario file (or start from defaults) and apply `--set` overrides.

    Args:
        path: JSON scenario file, or None for the built-in defaults
        overrides: iterable of 'section.key=value' strings

    Returns:
        The validated ScenarioConfig.
    """
    raw = {}
    if path is not None:
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as fp:
                raw = json.load(fp)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
        logger.debug("loaded scenario configuration from %s", path)
    return build_config(apply_overrides(raw, overrides))


def config_to_dict(config: ScenarioConfig) -> dict:
    out = {}
    for f in fields(config):
        section = getattr(config, f.name)
        if is_dataclass(section):
            out[f.name] = {s.name: getattr(section, s.name) for s in fields(section)}
    return out
