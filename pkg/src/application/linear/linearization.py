"""Central finite-difference linearization of x' = f(x, u), y = g(x, u)."""
import logging
from typing import Callable, List, Sequence, Tuple

import numpy as np

from domain.entities.linear_models import LinearSystem
from domain.errors import LinearizationError

logger = logging.getLogger(__name__)

# Relative disagreement between step h and h/2 above which an entry is reported
CONSISTENCY_TOLERANCE = 1e-5


def difference_steps(x: np.ndarray, scale: float = 1.0) -> np.ndarray:
    return scale * np.maximum(1e-6, 1e-6 * np.abs(x))


def _central_jacobian(func: Callable, x0: np.ndarray, u0: np.ndarray, wrt_state: bool, scale: float) -> np.ndarray:
    base = x0 if wrt_state else u0
    steps = difference_steps(base, scale)
    columns = []
    for i, h in enumerate(steps):
        delta = np.zeros_like(base)
        delta[i] = h
        if wrt_state:
            plus, minus = func(x0 + delta, u0), func(x0 - delta, u0)
        else:
            plus, minus = func(x0, u0 + delta), func(x0, u0 - delta)
        columns.append((np.asarray(plus, dtype=float) - np.asarray(minus, dtype=float)) / (2.0 * h))
    if not columns:
        return np.zeros((len(np.atleast_1d(func(x0, u0))), 0))
    jac = np.column_stack(columns)
    if not np.all(np.isfinite(jac)):
        raise LinearizationError("non-finite entries in finite-difference Jacobian")
    return jac


def numerical_jacobians(func: Callable, x0, u0, scale: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """(d func/dx, d func/du) at (x0, u0)."""
    x0 = np.asarray(x0, dtype=float)
    u0 = np.asarray(u0, dtype=float)
    return (_central_jacobian(func, x0, u0, True, scale),
            _central_jacobian(func, x0, u0, False, scale))


def _inconsistent_entries(name: str, coarse: np.ndarray, fine: np.ndarray) -> List[str]:
    gap = np.abs(coarse - fine)
    bad = np.argwhere(gap > CONSISTENCY_TOLERANCE * (1.0 + np.abs(fine)))
    return [f"{name}[{i},{j}] differs by {gap[i, j]:.3g} between steps h and h/2" for i, j in bad]


def linearize(f: Callable, g: Callable, x0, u0, states: Sequence[str] = ()) -> LinearSystem:
    x0 = np.asarray(x0, dtype=float)
    u0 = np.asarray(u0, dtype=float)
    A, B = numerical_jacobians(f, x0, u0)
    C, D = numerical_jacobians(g, x0, u0)

    A_half, B_half = numerical_jacobians(f, x0, u0, scale=0.5)
    warnings = _inconsistent_entries("A", A, A_half) + _inconsistent_entries("B", B, B_half)
    for message in warnings:
        logger.warning("ill-conditioned difference: %s", message)
    return LinearSystem(A, B, C, D, states=tuple(states), warnings=tuple(warnings))
