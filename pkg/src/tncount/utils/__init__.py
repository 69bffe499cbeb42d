"""Utility modules."""

from tncount.utils.logging import bind_run_context, get_logger, setup_logging
from tncount.utils.timing import Deadline, Stopwatch

__all__ = [
    "Deadline",
    "Stopwatch",
    "bind_run_context",
    "get_logger",
    "setup_logging",
]
