"""
Logging configuration for Likelihood Station
Uses structlog for structured logging with built-in Python logging
"""

import logging
import sys

import structlog


class _Stderr:
    """Writes to whatever sys.stderr is at write time."""

    def write(self, message: str) -> int:
        return sys.stderr.write(message)

    def flush(self) -> None:
        sys.stderr.flush()


def setup_logging(log_level: str = "INFO", log_format: str = "console") -> None:
    """
    Configure structured logging with structlog and Python logging

    Args:
        log_level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: "console" for human-readable lines, "json" for one JSON object per event
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    # Reports own stdout, diagnostics go to stderr
    logging.basicConfig(
        format="%(message)s",
        stream=_Stderr(),
        level=level,
    )

    if log_format == "json":
        tail = [structlog.processors.format_exc_info, structlog.processors.JSONRenderer()]
    else:
        tail = [structlog.dev.ConsoleRenderer(colors=False)]

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            *tail,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.WriteLoggerFactory(file=_Stderr()),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str) -> structlog.BoundLogger:
    """
    Get a configured logger instance

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured structlog logger
    """
    return structlog.get_logger(name)
