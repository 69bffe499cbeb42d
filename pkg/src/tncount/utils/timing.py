"""Cooperative deadlines and phase timers."""

from __future__ import annotations

import threading
import time
from contextlib import contextmanager
from typing import Iterator, Optional

from tncount.errors import Cancelled, DeadlineExceeded


class Deadline:
    """Wall-clock budget checked cooperatively between units of work."""

    def __init__(
        self,
        seconds: Optional[float] = None,
        cancel_event: Optional[threading.Event] = None,
    ):
        """Initialize the deadline.

        Args:
            seconds: Budget from now; None means unbounded.
            cancel_event: Optional event that aborts the work when set.
        """
        self.start = time.monotonic()
        self.expires_at = None if seconds is None else self.start + seconds
        self.cancel_event = cancel_event

    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def remaining(self) -> float:
        if self.expires_at is None:
            return float("inf")
        return max(0.0, self.expires_at - time.monotonic())

    def overdue(self) -> float:
        """Seconds past expiry; 0 before it or when unbounded."""
        if self.expires_at is None:
            return 0.0
        return max(0.0, time.monotonic() - self.expires_at)

    def detached(self) -> "Deadline":
        """Same expiry, no cancel event."""
        clone = Deadline()
        clone.start = self.start
        clone.expires_at = self.expires_at
        return clone

    def cancelled(self) -> bool:
        return self.cancel_event is not None and self.cancel_event.is_set()

    def expired(self) -> bool:
        if self.cancelled():
            return True
        return self.expires_at is not None and time.monotonic() >= self.expires_at

    def check(self, stage: str) -> None:
        """Raise if the budget is spent or the work was cancelled.

        Raises:
            Cancelled: If the cancel event is set.
            DeadlineExceeded: If the budget ran out.
        """
        if self.cancelled():
            raise Cancelled(stage)
        if self.expires_at is not None and time.monotonic() >= self.expires_at:
            raise DeadlineExceeded(stage)


class Stopwatch:
    """Accumulates named phase durations."""

    def __init__(self) -> None:
        self.phases: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            self.phases[name] = self.phases.get(name, 0.0) + time.perf_counter() - started

    def get(self, name: str) -> float:
        return self.phases.get(name, 0.0)

    @property
    def total(self) -> float:
        return sum(self.phases.values())
