from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class RunMetrics:
    """Scalar outcome of one run; metric fields are None when the run diverged."""

    case_id: int
    seed: int
    diverged: bool
    rms_theta_err: Optional[float] = None  # rad
    rms_beta_rate: Optional[float] = None  # rad/s
    max_abs_Qalpha: Optional[float] = None  # Pa*rad
    message: str = ""
