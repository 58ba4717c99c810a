from abc import ABC, abstractmethod


class ProgressReporter(ABC):
    """Abstract interface for campaign progress reporting."""

    @abstractmethod
    def update(self, done: int, total: int | None):
        """Update progress with the number of finished runs and the total."""
        pass

    @abstractmethod
    def finish(self):
        """Called when every run has finished."""
        pass
