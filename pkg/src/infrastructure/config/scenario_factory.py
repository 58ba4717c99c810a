import logging
import math

import numpy as np

from application.linear.closed_loop_model import LinearizationOptions
from application.linear.frequency_response import log_grid
from application.trajectory.synthetic_trajectory import synth_reference_trajectory
from domain.entities.controller_kind import ControllerKind
from domain.entities.scenario import (
    ActuatorLimits,
    CommandProfile,
    RateConfig,
    SensorConfig,
    SimScenario,
    WindConfig,
)
from domain.entities.trajectory_point import TrajectoryTable
from domain.entities.tuning import TuningSpec
from domain.errors import ConfigError, TuningError
from domain.repositories.trajectory_repository import TrajectoryRepository
from infrastructure.config.scenario_config import ScenarioConfig

logger = logging.getLogger(__name__)


class ScenarioFactory:
    """Turns a validated ScenarioConfig into the domain objects the services consume."""

    def __init__(self, repo: TrajectoryRepository):
        self.repo = repo

    def table(self, config: ScenarioConfig) -> TrajectoryTable:
        if config.trajectory.path is None:
            logger.debug("using the synthetic reference trajectory (%.1f s)", config.trajectory.synthetic_duration)
            return synth_reference_trajectory(config.trajectory.synthetic_duration)
        return self.repo.load(config.trajectory.path)

    @staticmethod
    def tuning(config: ScenarioConfig) -> TuningSpec:
        t = config.tuning
        try:
            return TuningSpec(
                omega_theta=t.omega_theta, zeta=t.zeta, G0=t.G0, omega_qdot=t.omega_qdot,
                omega_beta=t.omega_beta, omega_beta0=t.omega_beta0, n_nodes=t.nodes,
                beta0_source=t.beta0_source,
            )
        except TuningError as exc:
            raise ConfigError(f"tuning: {exc}") from exc

    def scenario(self, config: ScenarioConfig, table: TrajectoryTable | None = None) -> SimScenario:
        """
        Build the nominal scenario described by the configuration.

        Args:
            config: validated configuration
            table: trajectory to use instead of loading config.trajectory again

        Returns:
            SimScenario with identity dispersion and case id 0
        """
        table = table if table is not None else self.table(config)
        return SimScenario(
            table=table,
            controller=ControllerKind(config.controller.kind),
            tuning=self.tuning(config),
            wind=WindConfig(
                enabled=config.wind.enabled, seed=config.wind.seed,
                sigma=config.wind.sigma, intensity=config.wind.intensity,
            ),
            sensors=SensorConfig(
                gyro_3sigma=math.radians(config.sensors.gyro_3sigma_dps),
                attitude_3sigma=math.radians(config.sensors.attitude_3sigma_deg),
            ),
            tvc_delay_samples=config.delays.tvc_samples,
            rates=RateConfig(config.rates.f_gnc, config.rates.f_wind, config.rates.f_int),
            duration=config.trajectory.duration,
            start_time=config.trajectory.start_time,
            command=CommandProfile(
                kind=config.command.kind, step_time=config.command.step_time,
                amplitude=math.radians(config.command.amplitude_deg),
            ),
            master_seed=config.seeds.master,
            limits=ActuatorLimits(
                enabled=config.limits.enabled,
                beta_max=math.radians(config.limits.beta_max_deg),
                beta_rate_max=math.radians(config.limits.beta_rate_max_dps),
            ),
        )

    @staticmethod
    def linearization_options(config: ScenarioConfig) -> LinearizationOptions:
        lin = config.linearization
        return LinearizationOptions(
            actuator=lin.actuator, twd=lin.twd, drift=lin.drift, filters=lin.filters,
            lpf=lin.lpf, exact_mu_c=lin.exact_mu_c, pade=lin.pade,
        )

    @staticmethod
    def omega_grid(config: ScenarioConfig) -> np.ndarray:
        lin = config.linearization
        return log_grid(lin.omega_min, lin.omega_max, lin.omega_points)
