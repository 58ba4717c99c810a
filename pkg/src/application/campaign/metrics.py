import numpy as np

from domain.entities.run_metrics import RunMetrics
from domain.entities.telemetry import TelemetryLog


def rms(series) -> float:
    values = np.asarray(series, dtype=float)
    if values.size == 0:
        raise ValueError("rms of an empty series is undefined")
    return float(np.sqrt(np.mean(values * values)))


def compute_run_metrics(log: TelemetryLog, case_id: int, seed: int) -> RunMetrics:
    """Pitch-error RMS, gimbal-rate RMS (actuator state) and peak |Q*alpha|."""
    return RunMetrics(
        case_id=case_id,
        seed=seed,
        diverged=False,
        rms_theta_err=rms(log.theta_err),
        rms_beta_rate=rms(log.beta_dot),
        max_abs_Qalpha=float(np.max(np.abs(log.Qalpha))),
    )
