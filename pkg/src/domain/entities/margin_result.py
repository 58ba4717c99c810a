import math
from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class MarginResult:
    """Classical loop margins of one open-loop frequency response.

    phase_margin in degrees, gain_margin in dB; infinite when the matching
    crossing does not exist, in which case the crossing frequency is NaN.
    """

    phase_margin: float = math.inf
    gain_margin: float = math.inf
    omega_gc: float = math.nan
    omega_pc: float = math.nan
    stable: bool = True
    gain_crossings: Tuple[Tuple[float, float], ...] = ()  # (omega, phase margin)
    phase_crossings: Tuple[Tuple[float, float], ...] = ()  # (omega, gain margin)
