"""Continuous-time INDI closed loop with frozen parameters, cut at the outer loop for linearization.

The 25 Hz controller is represented by the continuous prototypes of its filters.
Optional pieces (actuator dynamics, tail-wags-dog, drift, filters, output
low-pass, half-sample Pade delay) can be switched off to isolate their effect.
"""
import logging
from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np

from application.control.controllers import indi_command
from application.control.tuning import indi_outer_gains, lookup_gains, tune_schedule
from application.dynamics.launcher_model import PlantParameters, accelerations, actuator_acceleration
from application.linear.frequency_response import freq_response, log_grid
from application.linear.linearization import linearize
from application.trajectory.trajectory_service import apply_dispersion, plant_coefficients, sample_params
from domain.entities.controller_kind import ControllerKind
from domain.entities.linear_models import FrequencyResponse, LinearSystem
from domain.entities.scenario import SimScenario
from domain.entities.tuning import GainSchedule, TuningSpec
from domain.errors import LinearizationError

logger = logging.getLogger(__name__)

NU_TO_THETA = "nu_to_theta"
THETAERR_TO_THETA = "thetaerr_to_theta"
CHANNELS = (NU_TO_THETA, THETAERR_TO_THETA)


@dataclass(frozen=True)
class LinearizationOptions:
    actuator: bool = True
    twd: bool = True
    drift: bool = True
    filters: bool = True
    lpf: Optional[bool] = None  # None: follow the controller kind
    exact_mu_c: bool = False
    pade: bool = False

    @classmethod
    def perfect_inversion(cls) -> "LinearizationOptions":
        return cls(actuator=False, twd=False, drift=False, filters=False, lpf=False, exact_mu_c=True)


class ClosedLoopModel:
    """x' = f(x, u), y = theta, with u = nu or the pitch error depending on the channel."""

    def __init__(self, params: PlantParameters, mu_c_controller: float, spec: TuningSpec,
                 options: LinearizationOptions, channel: str, f_gnc: float):
        if channel not in CHANNELS:
            raise LinearizationError(f"unknown channel '{channel}', expected one of {CHANNELS}")
        if mu_c_controller == 0.0:
            raise LinearizationError("controller control effectiveness is zero")
        self.params = params
        self.mu_c = mu_c_controller
        self.spec = spec
        self.options = options
        self.channel = channel
        self.kP, self.kD = indi_outer_gains(spec)
        self.tau = 0.5 / f_gnc

        names: List[str] = []
        if options.drift:
            names.append("w")
        names += ["theta", "q"]
        if options.actuator:
            names += ["beta", "beta_dot"]
        if options.filters:
            names += ["qdot_filter", "beta0_filter"]
        if options.lpf:
            names.append("output_lpf")
        if options.pade:
            names.append("pade")
        self.states = tuple(names)
        self._index = {name: i for i, name in enumerate(names)}

    def _get(self, x: np.ndarray, name: str, default: float = 0.0) -> float:
        i = self._index.get(name)
        return default if i is None else x[i]

    def derivative(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        opts = self.options
        p = self.params
        w = self._get(x, "w")
        theta = x[self._index["theta"]]
        q = x[self._index["q"]]
        beta_act = self._get(x, "beta")
        beta_dot = self._get(x, "beta_dot")

        nu = u[0] if self.channel == NU_TO_THETA else self.kP * u[0] - self.kD * q
        if opts.filters:
            x_q = x[self._index["qdot_filter"]]
            qdot0 = self.spec.omega_qdot * (q - x_q)
            if self.spec.beta0_source == "actuator" and opts.actuator:
                beta0 = beta_act
            else:
                beta0 = x[self._index["beta0_filter"]]
        else:
            beta0 = beta_act if opts.actuator else 0.0
            _, qdot0 = accelerations(p, w, theta, q, beta0, 0.0, 0.0)
        beta_inc = indi_command(beta0, nu, qdot0, self.mu_c)
        beta_cmd = x[self._index["output_lpf"]] if opts.lpf else beta_inc
        if opts.pade:
            x_p = x[self._index["pade"]]
            beta_applied = 2.0 * x_p - beta_cmd
        else:
            beta_applied = beta_cmd

        if opts.actuator:
            beta_ddot = actuator_acceleration(beta_act, beta_dot, beta_applied)
            beta_plant = beta_act
            beta_ddot_twd = beta_ddot if opts.twd else 0.0
        else:
            beta_ddot = 0.0
            beta_plant = beta_applied
            beta_ddot_twd = 0.0
        w_dot, q_dot = accelerations(p, w, theta, q, beta_plant, beta_ddot_twd, 0.0)

        dx = np.zeros(len(self.states))
        if opts.drift:
            dx[self._index["w"]] = w_dot
        dx[self._index["theta"]] = q
        dx[self._index["q"]] = q_dot
        if opts.actuator:
            dx[self._index["beta"]] = beta_dot
            dx[self._index["beta_dot"]] = beta_ddot
        if opts.filters:
            dx[self._index["qdot_filter"]] = self.spec.omega_qdot * (q - x[self._index["qdot_filter"]])
            dx[self._index["beta0_filter"]] = self.spec.omega_beta0 * (beta_cmd - x[self._index["beta0_filter"]])
        if opts.lpf:
            dx[self._index["output_lpf"]] = self.spec.omega_beta * (beta_inc - beta_cmd)
        if opts.pade:
            dx[self._index["pade"]] = 2.0 / self.tau * (beta_cmd - x[self._index["pade"]])
        return dx

    def output(self, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        return np.array([x[self._index["theta"]]])

    def linearize(self) -> LinearSystem:
        x0 = np.zeros(len(self.states))
        return linearize(self.derivative, self.output, x0, np.zeros(1), states=self.states)


def build_closed_loop_model(scenario: SimScenario, t: float, channel: str,
                            options: LinearizationOptions | None = None,
                            schedule: GainSchedule | None = None) -> ClosedLoopModel:
    if not scenario.controller.is_indi:
        raise LinearizationError("closed-loop linearization is defined for the INDI laws only")
    options = options or LinearizationOptions()
    if options.lpf is None:
        options = replace(options, lpf=scenario.controller == ControllerKind.INDI_LPF)
    point = apply_dispersion(sample_params(scenario.table, t), scenario.dispersion)
    if options.exact_mu_c:
        mu_c = plant_coefficients(point).mu_c
    else:
        schedule = schedule or tune_schedule(scenario.controller, scenario.table, scenario.tuning)
        mu_c = lookup_gains(schedule, t).mu_c
    return ClosedLoopModel(PlantParameters.from_point(point), mu_c, scenario.tuning, options, channel,
                           scenario.rates.f_gnc)


def linearize_closed_loop(scenario: SimScenario, t: float, channel: str = NU_TO_THETA,
                          options: LinearizationOptions | None = None,
                          schedule: GainSchedule | None = None) -> LinearSystem:
    return build_closed_loop_model(scenario, t, channel, options, schedule).linearize()


def open_loop_response(system: LinearSystem, spec: TuningSpec, channel: str = NU_TO_THETA,
                       omega=None) -> FrequencyResponse:
    """Loop transfer at the outer-loop cut: (kP + kD s) theta/nu, or theta/e as linearised."""
    omega = log_grid() if omega is None else np.asarray(omega, dtype=float)
    loop = system
    if channel == NU_TO_THETA:
        kP, kD = indi_outer_gains(spec)
        C = system.C[:1]
        B = system.B[:, :1]
        if np.any(system.D[:1, :1]) or np.any(C @ B):
            raise LinearizationError("theta must not respond to nu without integration")
        # (kP + kD s) theta = kP theta + kD theta'
        loop = LinearSystem(system.A, B, kP * C + kD * (C @ system.A), kD * (C @ B),
                            states=system.states, warnings=system.warnings)
    return freq_response(loop, omega, label=channel)
