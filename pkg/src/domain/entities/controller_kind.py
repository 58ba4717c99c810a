from enum import Enum
from types import MappingProxyType
from typing import Mapping, Tuple


class ControllerKind(str, Enum):
    PD = "pd"
    PD_QDOT = "pd_qdot"
    INDI = "indi"
    INDI_LPF = "indi_lpf"

    @property
    def is_indi(self) -> bool:
        return self in (ControllerKind.INDI, ControllerKind.INDI_LPF)


# (model parameters, sensor measurements/estimates) each law needs on board
CONTROLLER_DEPENDENCIES: Mapping[ControllerKind, Tuple[Tuple[str, ...], Tuple[str, ...]]] = MappingProxyType({
    ControllerKind.PD: (("mu_alpha", "mu_c", "l_alpha", "V"), ("theta", "q")),
    ControllerKind.PD_QDOT: (("mu_alpha", "mu_c", "l_alpha", "V"), ("theta", "q", "qdot")),
    ControllerKind.INDI: (("mu_c",), ("theta", "q", "qdot", "beta")),
    ControllerKind.INDI_LPF: (("mu_c",), ("theta", "q", "qdot", "beta")),
})
