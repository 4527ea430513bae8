"""
Turanflag Objective History - Bounded trace of an ascent's objective values
"""

from collections import deque
from typing import List, Optional


class ObjectiveHistory:
    """Circular buffer of objective values that tracks monotone progress"""

    def __init__(self, maxlen: int = 256, tolerance: float = 1e-12):
        """
        Initialize buffer with maximum length.

        Args:
            maxlen: Maximum number of values kept
            tolerance: Largest decrease still counted as non-decreasing
                (absorbs floating-point rounding)
        """
        self._buffer: deque = deque(maxlen=maxlen)
        self._tolerance = tolerance
        self._steps = 0
        self._worst_drop = 0.0

    def append(self, value: float) -> None:
        """Record a value, noting any decrease against the previous one"""
        if self._buffer:
            drop = self._buffer[-1] - value
            if drop > self._worst_drop:
                self._worst_drop = drop
        self._buffer.append(value)
        self._steps += 1

    def record_drop(self, drop: float) -> None:
        """Note a decrease observed outside the recorded trace"""
        if drop > self._worst_drop:
            self._worst_drop = drop

    def get_data(self) -> List[float]:
        return list(self._buffer)

    def get_latest(self) -> Optional[float]:
        return self._buffer[-1] if self._buffer else None

    def get_max(self) -> Optional[float]:
        return max(self._buffer) if self._buffer else None

    @property
    def steps(self) -> int:
        """Number of values recorded, including ones rotated out"""
        return self._steps

    @property
    def worst_drop(self) -> float:
        return self._worst_drop

    def is_monotone(self) -> bool:
        return self._worst_drop <= self._tolerance

    def __len__(self) -> int:
        return len(self._buffer)

    def clear(self) -> None:
        self._buffer.clear()
        self._steps = 0
        self._worst_drop = 0.0
