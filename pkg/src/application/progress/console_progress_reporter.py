import sys

from .progress_reporter import ProgressReporter


class ConsoleProgressReporter(ProgressReporter):
    """Draws a textual progress bar on stderr so CSV output on stdout stays clean."""

    def __init__(self, width: int = 30, label: str = "runs", stream=None):
        self.width = width
        self.label = label
        self.stream = stream or sys.stderr
        self.done = 0
        self.total = None

    def update(self, done: int, total: int | None):
        self.done = done
        self.total = total
        if total and total > 0:
            percentage = int(done / total * 100)
            filled = int(done / total * self.width)
            bar = '#' * filled + '.' * (self.width - filled)
            print(f'\r[{bar}] {percentage}% ({done}/{total} {self.label})', end='', flush=True, file=self.stream)
        else:
            print(f'\r{done} {self.label} finished', end='', flush=True, file=self.stream)

    def finish(self):
        if self.total and self.total > 0:
            bar = '#' * self.width
            print(f'\r[{bar}] 100% ({self.total}/{self.total} {self.label})', file=self.stream)
        else:
            print(f'\r{self.done} {self.label} finished', file=self.stream)
