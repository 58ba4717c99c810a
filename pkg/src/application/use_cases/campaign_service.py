import logging
from typing import Optional, Sequence

import pandas as pd

from application.campaign.campaign_engine import CampaignEngine
from application.campaign.campaign_runner import run_campaign
from domain.entities.scenario import SimScenario
from infrastructure.fs.artifact_writer import ArtifactWriter

logger = logging.getLogger(__name__)


class CampaignService:
    def __init__(self, writer: ArtifactWriter, engine: CampaignEngine):
        self.writer = writer
        self.engine = engine

    def execute(self, template: SimScenario, delta: float = 1.0,
                case_ids: Optional[Sequence[int]] = None) -> pd.DataFrame:
        """
        Run the corner-case Monte-Carlo campaign under a shared wind realization.

        Args:
            template: nominal scenario (its dispersion and case id are replaced per run)
            delta: uncertainty scale, 1.0 for the nominal levels
            case_ids: optional subsample of corner cases

        Returns:
            One metrics row per case, ordered by case id
        """
        frame = run_campaign(template, delta, case_ids, self.engine)
        self.writer.write_frame("campaign_metrics.csv", frame)
        diverged = int(frame["diverged"].sum())
        if diverged:
            logger.warning("%d of %d runs diverged", diverged, len(frame))
        return frame
