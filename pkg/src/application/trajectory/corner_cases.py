import itertools
from typing import List

from domain.entities.uncertainty_set import DISPERSED_PARAMETERS, UNCERTAINTY_LEVELS, UncertaintySet
from domain.errors import TrajectoryError


def enumerate_corner_cases(delta: float) -> List[UncertaintySet]:
    """All 2^8 combinations of lower/upper multipliers (1 -/+ delta*u).

    Case k has parameter i at its upper bound when bit (7 - i) of k is set,
    parameters ordered as DISPERSED_PARAMETERS; case 0 is all-lower, 255 all-upper.
    """
    if delta < 0.0:
        raise TrajectoryError(f"dispersion level must be non-negative, got {delta}")
    bounds = [
        (1.0 - delta * UNCERTAINTY_LEVELS[name], 1.0 + delta * UNCERTAINTY_LEVELS[name])
        for name in DISPERSED_PARAMETERS
    ]
    return [
        UncertaintySet(dict(zip(DISPERSED_PARAMETERS, combination)))
        for combination in itertools.product(*bounds)
    ]
