"""Structured logging on stderr, so stdout carries only answer lines."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Optional

import structlog


def _processors(json_output: bool) -> list[Any]:
    shared: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
    ]
    if json_output:
        return shared + [
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.dict_tracebacks,
            structlog.processors.JSONRenderer(),
        ]
    return shared + [
        structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S"),
        structlog.dev.ConsoleRenderer(colors=False),
    ]


def setup_logging(
    level: str = "INFO",
    log_file: Optional[str] = None,
    json_output: bool = False,
) -> structlog.BoundLogger:
    """Configure structured logging for a tncount command.

    Records go through the standard library to a stderr handler and, when
    ``log_file`` is set, a file handler. Any run context bound earlier is
    cleared.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR).
        log_file: Optional path to log file; parent directories are created.
        json_output: If True, emit one JSON object per record (for batch runs).

    Returns:
        Configured structlog logger.
    """
    log_level = getattr(logging, level.upper(), logging.INFO)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    for handler in handlers:
        handler.setLevel(log_level)

    logging.basicConfig(format="%(message)s", level=log_level, handlers=handlers, force=True)

    structlog.contextvars.clear_contextvars()
    structlog.configure(
        processors=_processors(json_output),
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    return structlog.get_logger()


def bind_run_context(**values: Any) -> None:
    """Attach key/value context (input path, method, portfolio member) to later records.

    Context is per thread of execution: portfolio workers bind their own.
    """
    structlog.contextvars.bind_contextvars(**values)


def get_logger(name: Optional[str] = None) -> structlog.BoundLogger:
    """Get a logger, bound with ``component=name`` when a name is given."""
    logger = structlog.get_logger()
    if name:
        logger = logger.bind(component=name)
    return logger
