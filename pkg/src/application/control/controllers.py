"""The four attitude control laws and their per-run state machines."""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

from application.control.filters import DerivativeFilter, LowPassFilter, derivative_filter_step, lowpass_step
from application.control.tuning import indi_outer_gains, lookup_gains
from domain.entities.controller_kind import ControllerKind
from domain.entities.tuning import GainSchedule, GainSet, TuningSpec
from domain.errors import TuningError


@dataclass
class ControllerState:
    """Filter memories and last outputs of one controller; everything starts at zero."""

    qdot_filter: DerivativeFilter
    output_filter: LowPassFilter
    beta0_filter: LowPassFilter
    qdot_est: float = 0.0
    beta0: float = 0.0
    nu: float = math.nan
    beta_cmd: float = 0.0

    @classmethod
    def create(cls, spec: TuningSpec, dt: float) -> "ControllerState":
        return cls(
            qdot_filter=DerivativeFilter(spec.omega_qdot, dt),
            output_filter=LowPassFilter(spec.omega_beta, dt),
            beta0_filter=LowPassFilter(spec.omega_beta0, dt),
        )

    def reset(self):
        self.qdot_filter.reset()
        self.output_filter.reset()
        self.beta0_filter.reset()
        self.qdot_est = 0.0
        self.beta0 = 0.0
        self.nu = math.nan
        self.beta_cmd = 0.0


def pd_step(state: ControllerState, theta_cmd: float, theta_meas: float, q_meas: float, gains: GainSet) -> float:
    beta_cmd = gains.kP * (theta_cmd - theta_meas) - gains.kD * q_meas
    state.beta_cmd = beta_cmd
    return beta_cmd


def pd_qdot_step(state: ControllerState, theta_cmd: float, theta_meas: float, q_meas: float, dt: float,
                 gains: GainSet) -> float:
    state.qdot_est = derivative_filter_step(state.qdot_filter, q_meas, dt)
    kA = gains.kA if gains.kA is not None else 0.0
    beta_cmd = gains.kP * (theta_cmd - theta_meas) - gains.kD * q_meas - kA * state.qdot_est
    state.beta_cmd = beta_cmd
    return beta_cmd


def indi_command(beta0: float, nu: float, qdot0: float, mu_c: float) -> float:
    """Incremental inversion: the deflection change that turns qdot0 into nu."""
    if mu_c == 0.0:
        raise TuningError("INDI inversion needs a non-zero control effectiveness")
    return beta0 - (nu - qdot0) / mu_c


def indi_step(state: ControllerState, theta_cmd: float, theta_meas: float, q_meas: float, dt: float,
              spec: TuningSpec, mu_c: float, use_lpf: bool, beta_measured: float | None = None) -> float:
    """One INDI tick.

    beta0 is the low-passed previously issued command unless the tuning selects the
    actuator feedback and `beta_measured` is given.
    """
    if mu_c == 0.0:
        raise TuningError("INDI inversion needs a non-zero control effectiveness")
    state.qdot_est = derivative_filter_step(state.qdot_filter, q_meas, dt)
    if spec.beta0_source == "actuator" and beta_measured is not None:
        state.beta0 = beta_measured
    else:
        state.beta0 = lowpass_step(state.beta0_filter, state.beta_cmd, dt, spec.omega_beta0)
    kP, kD = indi_outer_gains(spec)
    state.nu = kP * (theta_cmd - theta_meas) - kD * q_meas
    beta_cmd = indi_command(state.beta0, state.nu, state.qdot_est, mu_c)
    if use_lpf:
        beta_cmd = lowpass_step(state.output_filter, beta_cmd, dt, spec.omega_beta)
    state.beta_cmd = beta_cmd
    return beta_cmd


@dataclass(frozen=True)
class ControlOutput:
    beta_cmd: float
    qdot_est: float
    nu: float


class AttitudeController(ABC):
    """Scheduled control law stepped once per GNC tick."""

    def __init__(self, schedule: GainSchedule, spec: TuningSpec, dt: float):
        self.schedule = schedule
        self.spec = spec
        self.dt = dt
        self.state = ControllerState.create(spec, dt)

    def reset(self):
        self.state.reset()

    @abstractmethod
    def step(self, t: float, theta_cmd: float, theta_meas: float, q_meas: float,
             beta_measured: float) -> ControlOutput: ...


class PdController(AttitudeController):

    def step(self, t, theta_cmd, theta_meas, q_meas, beta_measured):
        # estimate kept for telemetry only, the law does not use it
        qdot_est = derivative_filter_step(self.state.qdot_filter, q_meas, self.dt)
        beta_cmd = pd_step(self.state, theta_cmd, theta_meas, q_meas, lookup_gains(self.schedule, t))
        return ControlOutput(beta_cmd, qdot_est, math.nan)


class PdQdotController(AttitudeController):

    def step(self, t, theta_cmd, theta_meas, q_meas, beta_measured):
        beta_cmd = pd_qdot_step(self.state, theta_cmd, theta_meas, q_meas, self.dt, lookup_gains(self.schedule, t))
        return ControlOutput(beta_cmd, self.state.qdot_est, math.nan)


class IndiController(AttitudeController):

    def __init__(self, schedule: GainSchedule, spec: TuningSpec, dt: float, use_lpf: bool):
        super().__init__(schedule, spec, dt)
        self.use_lpf = use_lpf

    def step(self, t, theta_cmd, theta_meas, q_meas, beta_measured):
        mu_c = lookup_gains(self.schedule, t).mu_c
        beta_cmd = indi_step(self.state, theta_cmd, theta_meas, q_meas, self.dt, self.spec, mu_c,
                             self.use_lpf, beta_measured)
        return ControlOutput(beta_cmd, self.state.qdot_est, self.state.nu)


def build_controller(kind: ControllerKind, schedule: GainSchedule, spec: TuningSpec, dt: float) -> AttitudeController:
    if kind == ControllerKind.PD:
        return PdController(schedule, spec, dt)
    if kind == ControllerKind.PD_QDOT:
        if schedule.kA is None:
            raise TuningError("PD+qdot controller needs a schedule with acceleration gains")
        return PdQdotController(schedule, spec, dt)
    return IndiController(schedule, spec, dt, use_lpf=(kind == ControllerKind.INDI_LPF))
