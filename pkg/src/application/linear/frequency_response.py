import control
import numpy as np
import pandas as pd

from domain.entities.linear_models import FrequencyResponse, LinearSystem, TransferFunction
from domain.errors import LinearModelError

DEFAULT_OMEGA_MIN = 1e-2
DEFAULT_OMEGA_MAX = 1e3
DEFAULT_OMEGA_POINTS = 200
# poles closer to s = 0 than this fraction of the lowest analysis frequency count as integrators
ORIGIN_POLE_FRACTION = 0.1


def log_grid(omega_min: float = DEFAULT_OMEGA_MIN, omega_max: float = DEFAULT_OMEGA_MAX,
             n: int = DEFAULT_OMEGA_POINTS) -> np.ndarray:
    return np.logspace(np.log10(omega_min), np.log10(omega_max), n)


def as_lti(system: LinearSystem | TransferFunction):
    """python-control model of a SISO transfer function or of the first input/output channel."""
    if isinstance(system, TransferFunction):
        return control.tf(system.num, system.den)
    if system.n_states == 0:
        return control.tf([system.D[0, 0]], [1.0])
    return control.ss(system.A, system.B[:, :1], system.C[:1], system.D[:1, :1])


def evaluate(system: LinearSystem | TransferFunction, omega) -> np.ndarray:
    """G(j*omega) of a SISO transfer function or of the first input/output channel of a state-space model."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    lti = as_lti(system)
    try:
        with np.errstate(all="ignore"):
            values = np.asarray(lti(1j * omega, warn_infinite=False), dtype=complex).reshape(-1)
    except (np.linalg.LinAlgError, ArithmeticError) as exc:
        raise LinearModelError("frequency grid hits a pole on the imaginary axis") from exc
    if not np.all(np.isfinite(values)):
        raise LinearModelError("frequency grid hits a pole on the imaginary axis")
    return values


def pole_counts(system: LinearSystem | TransferFunction, omega_min: float = DEFAULT_OMEGA_MIN) -> tuple:
    """(strictly unstable poles, poles at the origin) of the open loop.

    A pole is at the origin when it lies well below the lowest analysis
    frequency; every other pole with a positive real part is unstable.
    """
    poles = system.poles() if isinstance(system, TransferFunction) else system.eigenvalues()
    at_origin = np.abs(poles) < ORIGIN_POLE_FRACTION * omega_min
    origin = int(np.sum(at_origin))
    unstable = int(np.sum((poles.real > 0.0) & ~at_origin))
    return unstable, origin


def freq_response(system: LinearSystem | TransferFunction, omega=None, label: str = "") -> FrequencyResponse:
    omega = log_grid() if omega is None else np.asarray(omega, dtype=float)
    unstable, origin = pole_counts(system, float(omega[0]))
    return FrequencyResponse(
        omega=omega,
        values=evaluate(system, omega),
        system=as_lti(system),
        unstable_poles=unstable,
        origin_poles=origin,
        label=label,
    )


def frequency_frame(resp: FrequencyResponse) -> pd.DataFrame:
    """Tabular export of a frequency response: real/imaginary parts plus gain (dB) and unwrapped phase (deg)."""
    values = np.asarray(resp.values, dtype=complex)
    return pd.DataFrame({
        "omega": resp.omega,
        "re": values.real,
        "im": values.imag,
        "mag_db": resp.magnitude_db,
        "phase_deg": np.degrees(np.unwrap(np.angle(values))),
    })


def state_space_dict(system: LinearSystem) -> dict:
    return {
        "states": list(system.states),
        "A": system.A.tolist(),
        "B": system.B.tolist(),
        "C": system.C.tolist(),
        "D": system.D.tolist(),
        "eigenvalues": [[float(ev.real), float(ev.imag)] for ev in system.eigenvalues()],
        "warnings": list(system.warnings),
    }
