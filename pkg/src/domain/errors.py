class SimulationError(Exception):
    """Base class for every error raised by the toolkit."""


class TrajectoryError(SimulationError, ValueError):
    """Invalid trajectory table, out-of-range sample time or bad dispersion."""


class ConfigError(SimulationError, ValueError):
    """Invalid scenario configuration; the message names the offending key."""


class TuningError(SimulationError, ValueError):
    """A tuning rule cannot produce gains (zero control effectiveness, bad spec)."""


class LinearModelError(SimulationError, ValueError):
    """Degenerate linear model or frequency evaluation on a pole."""


class LinearizationError(LinearModelError):
    """Finite-difference linearization produced non-finite entries."""


class DivergenceError(SimulationError):
    """A simulation left its physical bounds or produced non-finite values."""

    def __init__(self, message: str, t: float | None = None, state=None):
        super().__init__(message)
        self.t = t
        self.state = state
