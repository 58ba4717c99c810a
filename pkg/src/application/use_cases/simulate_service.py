import logging

from application.campaign.metrics import compute_run_metrics
from application.dynamics.simulator import simulate
from application.dynamics.telemetry_export import telemetry_frame
from domain.entities.run_metrics import RunMetrics
from domain.entities.scenario import SimScenario
from domain.entities.telemetry import TelemetryLog
from infrastructure.fs.artifact_writer import ArtifactWriter

logger = logging.getLogger(__name__)


class SimulateService:
    def __init__(self, writer: ArtifactWriter):
        self.writer = writer

    def execute(self, scenario: SimScenario) -> tuple[TelemetryLog, RunMetrics]:
        """
        Run one closed-loop simulation and export its telemetry.

        Args:
            scenario: fully specified run

        Returns:
            The telemetry log and its summary metrics
        """
        log = simulate(scenario)
        self.writer.write_frame("telemetry.csv", telemetry_frame(log))
        metrics = compute_run_metrics(log, scenario.case_id, scenario.master_seed)
        logger.info("simulated %d GNC ticks with %s", len(log), scenario.controller.value)
        return log, metrics
