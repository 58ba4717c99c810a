from typing import Optional, Sequence

import pandas as pd

from application.campaign.campaign_engine import CampaignEngine
from application.campaign.campaign_runner import (
    DELAY_SAMPLES,
    NOISE_LEVELS_DPS,
    sensitivity_grid,
    summarize_cells,
)
from domain.entities.scenario import SimScenario
from infrastructure.fs.artifact_writer import ArtifactWriter


class SensitivityService:
    def __init__(self, writer: ArtifactWriter, engine: CampaignEngine):
        self.writer = writer
        self.engine = engine

    def execute(self, template: SimScenario, delta: float = 1.0,
                case_ids: Optional[Sequence[int]] = None,
                noise_levels_dps: Sequence[float] = NOISE_LEVELS_DPS,
                delays: Sequence[int] = DELAY_SAMPLES) -> tuple[pd.DataFrame, pd.DataFrame]:
        """
        Repeat the campaign over the gyro-noise x command-delay grid.

        Returns:
            (all runs, per-cell worst metrics)
        """
        grid = sensitivity_grid(template, noise_levels_dps, delays, delta, case_ids, self.engine)
        summary = summarize_cells(grid)
        self.writer.write_frame("sensitivity.csv", grid)
        self.writer.write_frame("sensitivity_summary.csv", summary)
        return grid, summary
