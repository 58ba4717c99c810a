from dataclasses import dataclass, field
from typing import Any, Optional, Tuple

import numpy as np

from domain.errors import LinearModelError


def _trim(coefficients) -> np.ndarray:
    values = np.atleast_1d(np.asarray(coefficients, dtype=float))
    nonzero = np.flatnonzero(values)
    if len(nonzero) == 0:
        return np.zeros(1)
    return values[nonzero[0]:]


@dataclass(frozen=True, eq=False)
class TransferFunction:
    """Rational SISO transfer function, coefficients in descending powers of s."""

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self):
        num = _trim(self.num)
        den = _trim(self.den)
        if not np.all(np.isfinite(num)) or not np.all(np.isfinite(den)):
            raise LinearModelError("transfer function coefficients must be finite")
        if not np.any(den):
            raise LinearModelError("transfer function denominator is identically zero")
        num.setflags(write=False)
        den.setflags(write=False)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, s):
        return np.polyval(self.num, s) / np.polyval(self.den, s)

    def __mul__(self, other: "TransferFunction") -> "TransferFunction":
        return TransferFunction(np.polymul(self.num, other.num), np.polymul(self.den, other.den))

    def poles(self) -> np.ndarray:
        return np.roots(self.den)

    def zeros(self) -> np.ndarray:
        return np.roots(self.num)

    def dc_gain(self) -> float:
        if self.den[-1] == 0.0:
            return np.inf
        return float(self.num[-1] / self.den[-1])

    @property
    def is_proper(self) -> bool:
        return len(self.num) <= len(self.den)


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Continuous state-space model x' = A x + B u, y = C x + D u."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    states: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = ()

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        n = A.shape[0]
        B = np.asarray(self.B, dtype=float).reshape(n, -1)
        C = np.asarray(self.C, dtype=float).reshape(-1, n)
        D = np.asarray(self.D, dtype=float).reshape(C.shape[0], B.shape[1])
        if A.shape != (n, n):
            raise LinearModelError(f"A must be square, got {A.shape}")
        for name, matrix in (("A", A), ("B", B), ("C", C), ("D", D)):
            if not np.all(np.isfinite(matrix)):
                raise LinearModelError(f"non-finite entries in {name}")
        if self.states and len(self.states) != n:
            raise LinearModelError("state names do not match the state dimension")
        for name, matrix in (("A", A), ("B", B), ("C", C), ("D", D)):
            object.__setattr__(self, name, matrix)

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.A)


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    """Sampled SISO frequency response G(j*omega).

    `system` (when present) is the python-control model behind the samples; it
    locates crossings off-grid and closes the loop for the stability check.
    `unstable_poles` and `origin_poles` describe the open loop; None means unknown.
    """

    omega: np.ndarray
    values: np.ndarray
    system: Optional[Any] = field(default=None, repr=False)
    unstable_poles: Optional[int] = None
    origin_poles: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if omega.ndim != 1 or values.shape != omega.shape:
            raise LinearModelError("omega and response values must be 1-D arrays of equal length")
        if len(omega) < 2 or np.any(np.diff(omega) <= 0.0) or omega[0] <= 0.0:
            raise LinearModelError("omega must be positive and strictly increasing")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "values", values)

    @property
    def magnitude_db(self) -> np.ndarray:
        return 20.0 * np.log10(np.abs(self.values))
