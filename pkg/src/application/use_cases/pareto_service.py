import logging

import pandas as pd

from application.campaign.campaign_runner import nominal_step_metrics, pareto_sweep
from domain.entities.controller_kind import ControllerKind
from domain.entities.scenario import SimScenario
from infrastructure.fs.artifact_writer import ArtifactWriter

logger = logging.getLogger(__name__)


class ParetoService:
    def __init__(self, writer: ArtifactWriter):
        self.writer = writer

    def execute(self, template: SimScenario) -> tuple[pd.DataFrame, pd.DataFrame]:
        """
        Sweep the filter bandwidth of both acceleration-feedback families.

        The INDI+LPF output-filter bandwidth is also calibrated so that its nominal
        pitch error equals that of PD+q-dot at the configured omega_qdot.

        Args:
            template: nominal scenario carrying the tuning and the step command

        Returns:
            (per-bandwidth table, per-family summary)
        """
        reference = nominal_step_metrics(ControllerKind.PD_QDOT, template.tuning.omega_qdot, template)
        target = None if reference.diverged else reference.rms_theta_err

        frames, summary = [], []
        for kind in (ControllerKind.PD_QDOT, ControllerKind.INDI_LPF):
            result = pareto_sweep(kind, None, template,
                                  target_rms=target if kind == ControllerKind.INDI_LPF else None)
            table = result.table.copy()
            table.insert(0, "controller", kind.value)
            frames.append(table)
            summary.append({
                "controller": kind.value,
                "monotone": result.monotone,
                "target_rms_theta_err_rad": result.target_rms,
                "calibrated_bandwidth_rad_s": result.calibrated_bandwidth,
            })
            if not result.monotone:
                logger.warning("pitch error of %s does not decrease monotonically with bandwidth", kind.value)

        table = pd.concat(frames, ignore_index=True)
        summary = pd.DataFrame(summary)
        self.writer.write_frame("pareto.csv", table)
        self.writer.write_frame("pareto_summary.csv", summary)
        return table, summary
