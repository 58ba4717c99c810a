import logging
from typing import Optional, Sequence

from application.campaign.campaign_engine import CampaignEngine
from application.linear.closed_loop_model import (
    NU_TO_THETA,
    LinearizationOptions,
    linearize_closed_loop,
    open_loop_response,
)
from application.stability.margin_sweep import (
    SWEEP_SPACING,
    margin_budget,
    margin_sweep,
    nominal_sweep,
    summarize_sweep,
    sweep_times,
)
from application.stability.margins import nichols_data
from application.trajectory.corner_cases import enumerate_corner_cases
from application.trajectory.trajectory_service import max_q_time
from domain.entities.scenario import SimScenario
from infrastructure.fs.artifact_writer import ArtifactWriter

logger = logging.getLogger(__name__)


class MarginsService:
    def __init__(self, writer: ArtifactWriter, engine: CampaignEngine):
        self.writer = writer
        self.engine = engine

    def execute(self, template: SimScenario, delta: float = 1.0, channel: str = NU_TO_THETA,
                options: LinearizationOptions | None = None, omega=None,
                spacing: float = SWEEP_SPACING,
                case_ids: Optional[Sequence[int]] = None) -> dict:
        """
        Margins of every corner case along the flight plus the margin budget.

        Args:
            template: nominal INDI scenario
            delta: uncertainty scale of the corner cases (1.0 or 2.0 in practice)
            channel: loop cut
            options: linearization switches
            omega: frequency grid (rad/s)
            spacing: time step of the sweep grid (s)
            case_ids: optional subsample of corner cases

        Returns:
            Mapping of artifact name to DataFrame
        """
        times = sweep_times(template.table, spacing)
        cases = enumerate_corner_cases(delta)
        ids = list(range(len(cases))) if case_ids is None else sorted(case_ids)
        logger.info("margin sweep: %d cases x %d instants", len(ids), len(times))

        kwargs = dict(channel=channel, options=options, omega=omega, engine=self.engine)
        sweep = margin_sweep(template, [cases[i] for i in ids], times, case_ids=ids, **kwargs)
        nominal = nominal_sweep(template, times, **kwargs)
        summary = summarize_sweep(sweep, nominal)
        budget = margin_budget(template, sweep, nominal)

        t_nichols = max_q_time(template.table)
        system = linearize_closed_loop(template, t_nichols, channel, options)
        nichols = nichols_data(open_loop_response(system, template.tuning, channel, omega))
        nichols.insert(0, "t", t_nichols)

        artifacts = {
            "margins_vs_time.csv": sweep.drop(columns=["error"]),
            "margins_nominal.csv": nominal.drop(columns=["error"]),
            "margins_summary.csv": summary,
            "margin_budget.csv": budget,
            "nichols.csv": nichols,
        }
        failed = sweep[sweep["error"] != ""]
        if len(failed):
            artifacts["margins_failed_cells.csv"] = failed
        for name, frame in artifacts.items():
            self.writer.write_frame(name, frame)
        return artifacts
