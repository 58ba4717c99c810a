import pandas as pd

from application.control.tuning import controller_dependencies, schedule_frame, tune_schedule
from domain.entities.controller_kind import ControllerKind
from domain.entities.trajectory_point import TrajectoryTable
from domain.entities.tuning import TuningSpec
from infrastructure.fs.artifact_writer import ArtifactWriter


class TuneService:
    def __init__(self, writer: ArtifactWriter | None = None):
        self.writer = writer

    def execute(self, kind: ControllerKind, table: TrajectoryTable, spec: TuningSpec) -> tuple[pd.DataFrame, dict]:
        """
        Compute the gain schedule of a controller at the tuning nodes.

        Args:
            kind: control law
            table: nominal trajectory
            spec: closed-loop targets

        Returns:
            (gain table, on-board dependencies of the law)
        """
        frame = schedule_frame(tune_schedule(kind, table, spec))
        if self.writer is not None:
            self.writer.write_frame(f"gains_{kind.value}.csv", frame)
        return frame, controller_dependencies(kind)
