from application.trajectory.synthetic_trajectory import synth_reference_trajectory
from domain.entities.trajectory_point import TrajectoryTable
from domain.repositories.trajectory_repository import TrajectoryRepository


class SynthTrajectoryService:
    def __init__(self, repo: TrajectoryRepository):
        self.repo = repo

    def execute(self, path, duration: float = 80.0) -> TrajectoryTable:
        """
        Generate the synthetic reference trajectory and store it as CSV.

        Args:
            path: destination file
            duration: window length in seconds

        Returns:
            The generated table
        """
        table = synth_reference_trajectory(duration)
        self.repo.save(table, path)
        return table
