import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, List, Sequence, TypeVar

from application.progress.progress_reporter import ProgressReporter

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class CampaignEngine:
    """
    Executes independent jobs (simulation runs, sweep cells) serially or on a
    process pool. Results always come back in job order, whatever order the
    workers finish in.
    """

    def __init__(self, max_workers: int = 1, progress_reporter: ProgressReporter | None = None):
        if max_workers < 1:
            raise ValueError("max_workers must be at least 1")
        self.max_workers = max_workers
        self.progress_reporter = progress_reporter

    def _report(self, done: int, total: int):
        if self.progress_reporter:
            self.progress_reporter.update(done, total)

    def map(self, job: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        Apply a picklable top-level function to every item.

        Args:
            job: function executed once per item
            items: job inputs

        Returns:
            Results ordered like `items`
        """
        total = len(items)
        results: List[R | None] = [None] * total
        if self.max_workers == 1 or total <= 1:
            for index, item in enumerate(items):
                results[index] = job(item)
                self._report(index + 1, total)
        else:
            logger.info("dispatching %d jobs to %d workers", total, self.max_workers)
            with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
                futures = {executor.submit(job, item): index for index, item in enumerate(items)}
                done = 0
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    done += 1
                    self._report(done, total)
        if self.progress_reporter:
            self.progress_reporter.finish()
        return results
