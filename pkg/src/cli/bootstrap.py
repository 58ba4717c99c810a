from application.campaign.campaign_engine import CampaignEngine
from application.progress.console_progress_reporter import ConsoleProgressReporter
from application.use_cases.campaign_service import CampaignService
from application.use_cases.linearize_service import LinearizeService
from application.use_cases.margins_service import MarginsService
from application.use_cases.pareto_service import ParetoService
from application.use_cases.sensitivity_service import SensitivityService
from application.use_cases.simulate_service import SimulateService
from application.use_cases.synth_trajectory_service import SynthTrajectoryService
from application.use_cases.tune_service import TuneService
from infrastructure.config.scenario_factory import ScenarioFactory
from infrastructure.fs.artifact_writer import ArtifactWriter
from infrastructure.persistence.csv_trajectory_repository import CsvTrajectoryRepository


class Bootstrap:
    def __init__(self, out_dir="results", max_workers=1, show_progress=True):
        self.repo = CsvTrajectoryRepository()
        self.writer = ArtifactWriter(out_dir)
        self.factory = ScenarioFactory(self.repo)

        # Progress bars only make sense for the long fan-out commands
        self.progress_reporter = ConsoleProgressReporter() if show_progress else None
        self.engine = CampaignEngine(max_workers, self.progress_reporter)

        self.simulate = SimulateService(self.writer)
        self.tune = TuneService(self.writer)
        self.campaign = CampaignService(self.writer, self.engine)
        self.sensitivity = SensitivityService(self.writer, self.engine)
        self.pareto = ParetoService(self.writer)
        self.linearize = LinearizeService(self.writer)
        self.margins = MarginsService(self.writer, self.engine)
        self.synth_trajectory = SynthTrajectoryService(self.repo)
