"""First-order controller filters, Tustin-discretised at the GNC rate."""
from domain.entities.linear_models import TransferFunction


class _TustinFirstOrder:
    def __init__(self, omega: float, dt: float):
        if omega <= 0.0 or dt <= 0.0:
            raise ValueError("filter bandwidth and sample period must be positive")
        self.omega = omega
        self.dt = dt
        self.a = (2.0 - omega * dt) / (2.0 + omega * dt)
        self.u_prev = 0.0
        self.y_prev = 0.0

    def retune(self, omega: float | None = None, dt: float | None = None):
        """Recompute coefficients, keeping the filter memory."""
        u_prev, y_prev = self.u_prev, self.y_prev
        self.__init__(self.omega if omega is None else omega, self.dt if dt is None else dt)
        self.u_prev, self.y_prev = u_prev, y_prev

    def reset(self):
        self.u_prev = 0.0
        self.y_prev = 0.0


class DerivativeFilter(_TustinFirstOrder):
    """Filtered differentiator s*omega / (s + omega)."""

    def __init__(self, omega: float, dt: float):
        super().__init__(omega, dt)
        self.b = 2.0 * omega / (2.0 + omega * dt)

    def step(self, u: float) -> float:
        y = self.a * self.y_prev + self.b * (u - self.u_prev)
        self.u_prev, self.y_prev = u, y
        return y

    def prototype(self) -> TransferFunction:
        return TransferFunction([self.omega, 0.0], [1.0, self.omega])


class LowPassFilter(_TustinFirstOrder):
    """Unit-DC-gain low-pass omega / (s + omega)."""

    def __init__(self, omega: float, dt: float):
        super().__init__(omega, dt)
        self.c = omega * dt / (2.0 + omega * dt)

    def step(self, u: float) -> float:
        y = self.a * self.y_prev + self.c * (u + self.u_prev)
        self.u_prev, self.y_prev = u, y
        return y

    def prototype(self) -> TransferFunction:
        return TransferFunction([self.omega], [1.0, self.omega])


def derivative_filter_step(state: DerivativeFilter, q_meas: float, dt: float) -> float:
    if dt != state.dt:
        state.retune(dt=dt)
    return state.step(q_meas)


def lowpass_step(state: LowPassFilter, u: float, dt: float, omega_c: float) -> float:
    if dt != state.dt or omega_c != state.omega:
        state.retune(omega=omega_c, dt=dt)
    return state.step(u)
