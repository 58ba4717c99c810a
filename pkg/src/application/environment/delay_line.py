from collections import deque


class DelayLine:
    """Fixed-depth FIFO delaying a sampled signal by `depth` ticks (zero-filled)."""

    def __init__(self, depth: int):
        if depth < 0:
            raise ValueError("delay depth must be non-negative")
        self.depth = depth
        self._buffer = deque([0.0] * depth)

    def push_pop(self, x: float) -> float:
        self._buffer.append(x)
        return self._buffer.popleft()

    def reset(self):
        self._buffer = deque([0.0] * self.depth)


def delay_push_pop(line: DelayLine, x: float) -> float:
    return line.push_pop(x)


def delay_samples_from_ms(delay_ms: float, f_gnc: float) -> int:
    """Delay expressed in GNC samples, e.g. 40 ms at 25 Hz is one sample."""
    if delay_ms < 0.0:
        raise ValueError("delay must be non-negative")
    return int(round(delay_ms * 1e-3 * f_gnc))
