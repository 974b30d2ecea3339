"""Integer-step tapped delay line over a uniform sample grid.

Realizes the pure delay operator used throughout the pipeline: the tap at
k steps returns the sample pushed k pushes ago, and 0 before enough
history exists (zero pre-history).
"""

from __future__ import annotations


class TappedDelayLine:
    """Ring buffer with O(1) push and O(1) integer-delay taps.

    Single-writer: pushes and taps on one line must not interleave across
    threads. Distinct lines are fully independent.

    Args:
        capacity: deepest tap that will ever be requested, in samples.
        sample_period: grid spacing in seconds (bookkeeping only; taps are
            addressed in integer steps).
    """

    __slots__ = ("capacity", "sample_period", "count", "_buf", "_size", "_head")

    def __init__(self, capacity: int, sample_period: float):
        if capacity < 0:
            raise ValueError(f"capacity must be >= 0, got {capacity}")
        if sample_period <= 0:
            raise ValueError(f"sample_period must be positive, got {sample_period}")
        self.capacity = capacity
        self.sample_period = sample_period
        self.count = 0
        self._size = capacity + 1
        self._buf = [0.0] * self._size
        self._head = 0

    def push(self, sample: float) -> None:
        """Insert a new sample; the previous tap(k) becomes tap(k+1)."""
        head = self._head + 1
        if head == self._size:
            head = 0
        self._buf[head] = sample
        self._head = head
        self.count += 1

    def tap(self, steps: int) -> float:
        """Value pushed `steps` pushes ago; 0.0 if not pushed yet."""
        if steps < 0 or steps > self.capacity:
            raise ValueError(f"tap {steps} outside line capacity {self.capacity}")
        if steps >= self.count:
            return 0.0
        idx = self._head - steps
        if idx < 0:
            idx += self._size
        return self._buf[idx]

    def clear(self) -> None:
        """Drop all history; taps read 0 again until refilled."""
        for i in range(self._size):
            self._buf[i] = 0.0
        self.count = 0
        self._head = 0
