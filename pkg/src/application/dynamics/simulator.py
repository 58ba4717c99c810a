"""Multirate closed-loop simulation: plant at f_int, GNC at f_gnc, wind at f_wind."""
import logging
import math

import numpy as np

from application.control.controllers import build_controller
from application.control.tuning import tune_schedule
from application.dynamics.integrator import rk4_step
from application.dynamics.launcher_model import (
    PlantParameters,
    accelerations,
    actuator_acceleration,
    alpha_of,
)
from application.environment.delay_line import DelayLine
from application.environment.dryden_wind import DrydenWind
from application.environment.random_streams import make_rng
from application.environment.sensors import attitude_measure, gyro_measure
from application.trajectory.trajectory_service import dispersion_factors, sample_array
from domain.entities.scenario import SimScenario
from domain.entities.telemetry import TelemetryLog
from domain.entities.trajectory_point import TRAJECTORY_COLUMNS
from domain.entities.tuning import GainSchedule
from domain.errors import DivergenceError

logger = logging.getLogger(__name__)

# Abort bounds
THETA_BOUND = math.pi
W_BOUND = 1.0e4

_RHO = TRAJECTORY_COLUMNS.index("rho")
_V = TRAJECTORY_COLUMNS.index("V")

# State vector layout
Z, W, THETA, Q, BETA, BETA_DOT = range(6)


class LauncherSimulator:
    """Runs one scenario. Gains are scheduled on the nominal table; only the plant is dispersed."""

    def __init__(self, scenario: SimScenario, schedule: GainSchedule | None = None):
        self.scenario = scenario
        self.schedule = schedule or tune_schedule(scenario.controller, scenario.table, scenario.tuning)

    def _wind(self) -> DrydenWind | None:
        cfg = self.scenario.wind
        if not cfg.enabled:
            return None
        return DrydenWind(1.0 / self.scenario.rates.f_wind, rng=make_rng(cfg.seed, 0, "wind"),
                          sigma=cfg.sigma, intensity=cfg.intensity)

    def run(self) -> TelemetryLog:
        sc = self.scenario
        rates = sc.rates
        dt_int = 1.0 / rates.f_int
        n_gnc = rates.substeps_per_gnc
        n_wind = rates.substeps_per_wind
        n_ticks = sc.gnc_ticks
        t0 = sc.t_start

        factors = dispersion_factors(sc.dispersion)
        controller = build_controller(sc.controller, self.schedule, sc.tuning, 1.0 / rates.f_gnc)
        wind = self._wind()
        gyro_rng = make_rng(sc.master_seed, sc.case_id, "gyro")
        attitude_rng = make_rng(sc.master_seed, sc.case_id, "attitude")
        delay = DelayLine(sc.tvc_delay_samples)
        limits = sc.limits

        log = {name: np.empty(n_ticks) for name in (
            "t", "theta_cmd", "theta", "theta_err", "q", "qdot_est", "w", "z", "alpha", "Qalpha",
            "beta_cmd", "beta", "beta_dot", "nu", "v_w", "qdot")}

        x = np.zeros(6)
        v_w = 0.0
        beta_applied = 0.0
        params = None

        def derivative(t, s):
            beta_ddot = actuator_acceleration(s[BETA], s[BETA_DOT], beta_applied)
            w_dot, q_dot = accelerations(params, s[W], s[THETA], s[Q], s[BETA], beta_ddot, v_w)
            return np.array([s[W], w_dot, s[Q], q_dot, s[BETA_DOT], beta_ddot])

        logger.debug("simulating case %d with %s for %.2f s", sc.case_id, sc.controller.value, sc.run_duration)
        for k in range(n_ticks * n_gnc):
            t = t0 + k * dt_int
            if wind is not None and k % n_wind == 0:
                v_w = wind.step()
            row = sample_array(sc.table, t) * factors
            params = PlantParameters.from_array(row)

            if k % n_gnc == 0:
                i = k // n_gnc
                theta_cmd = sc.command.theta_cmd(t - t0)
                theta_meas = attitude_measure(x[THETA], sc.sensors.attitude_3sigma, attitude_rng)
                q_meas = gyro_measure(x[Q], sc.sensors.gyro_3sigma, gyro_rng)
                out = controller.step(t, theta_cmd, theta_meas, q_meas, x[BETA])
                beta_applied = delay.push_pop(out.beta_cmd)

                alpha = alpha_of(params, x[W], x[THETA], x[Q], v_w)
                beta_ddot = actuator_acceleration(x[BETA], x[BETA_DOT], beta_applied)
                _, q_dot = accelerations(params, x[W], x[THETA], x[Q], x[BETA], beta_ddot, v_w)
                log["t"][i] = t
                log["theta_cmd"][i] = theta_cmd
                log["theta"][i] = x[THETA]
                log["theta_err"][i] = theta_cmd - x[THETA]
                log["q"][i] = x[Q]
                log["qdot_est"][i] = out.qdot_est
                log["w"][i] = x[W]
                log["z"][i] = x[Z]
                log["alpha"][i] = alpha
                log["Qalpha"][i] = 0.5 * row[_RHO] * row[_V] ** 2 * alpha
                log["beta_cmd"][i] = out.beta_cmd
                log["beta"][i] = x[BETA]
                log["beta_dot"][i] = x[BETA_DOT]
                log["nu"][i] = out.nu
                log["v_w"][i] = v_w
                log["qdot"][i] = q_dot

            x = rk4_step(derivative, x, t, dt_int)
            if limits.enabled:
                x[BETA_DOT] = min(max(x[BETA_DOT], -limits.beta_rate_max), limits.beta_rate_max)
                if abs(x[BETA]) >= limits.beta_max:
                    x[BETA] = math.copysign(limits.beta_max, x[BETA])
                    if x[BETA] * x[BETA_DOT] > 0.0:
                        x[BETA_DOT] = 0.0
            if abs(x[THETA]) > THETA_BOUND or abs(x[W]) > W_BOUND or not np.all(np.isfinite(x)):
                t_end = t + dt_int
                raise DivergenceError(
                    f"case {sc.case_id} diverged at t={t_end:.3f} s "
                    f"(theta={x[THETA]:.4g} rad, w={x[W]:.4g} m/s)",
                    t=t_end, state=x.copy(),
                )

        return TelemetryLog(**log)


def simulate(scenario: SimScenario, schedule: GainSchedule | None = None) -> TelemetryLog:
    return LauncherSimulator(scenario, schedule).run()
