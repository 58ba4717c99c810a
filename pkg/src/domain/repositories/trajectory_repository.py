from abc import ABC, abstractmethod

from domain.entities.trajectory_point import TrajectoryTable


class TrajectoryRepository(ABC):

    @abstractmethod
    def load(self, path: str) -> TrajectoryTable: ...

    @abstractmethod
    def save(self, table: TrajectoryTable, path: str): ...
