import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Tuple

from domain.errors import TrajectoryError

# Order also fixes the bit order of the corner-case enumeration (first = most significant).
DISPERSED_PARAMETERS: Tuple[str, ...] = (
    "C_N_alpha", "l_alpha", "rho", "V", "m", "J", "l_c", "T",
)

AERODYNAMIC_PARAMETERS = frozenset({"C_N_alpha", "l_alpha", "rho", "V"})

# Relative 1-level uncertainty per dispersed parameter
UNCERTAINTY_LEVELS: Mapping[str, float] = MappingProxyType(
    {name: (0.20 if name in AERODYNAMIC_PARAMETERS else 0.10) for name in DISPERSED_PARAMETERS}
)


@dataclass(frozen=True, eq=False)
class UncertaintySet:
    """Multiplicative factors applied to the dispersed trajectory parameters."""

    multipliers: Mapping[str, float]

    def __post_init__(self):
        given = set(self.multipliers)
        expected = set(DISPERSED_PARAMETERS)
        if given != expected:
            missing = sorted(expected - given)
            extra = sorted(given - expected)
            raise TrajectoryError(f"bad dispersion keys (missing={missing}, unknown={extra})")
        ordered = {}
        for name in DISPERSED_PARAMETERS:
            value = float(self.multipliers[name])
            if not math.isfinite(value) or value <= 0.0:
                raise TrajectoryError(f"multiplier for '{name}' must be positive, got {value}")
            ordered[name] = value
        object.__setattr__(self, "multipliers", ordered)

    @classmethod
    def identity(cls) -> "UncertaintySet":
        return cls({name: 1.0 for name in DISPERSED_PARAMETERS})

    def as_tuple(self) -> Tuple[float, ...]:
        return tuple(self.multipliers[name] for name in DISPERSED_PARAMETERS)

    @property
    def is_identity(self) -> bool:
        return all(v == 1.0 for v in self.multipliers.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, UncertaintySet):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self) -> int:
        return hash(self.as_tuple())
