"""
Exception handlers for the Likelihood Station command line
"""

import json
import sys
import traceback
from typing import Any, Dict, Optional, TextIO, Tuple

from ..logging_config import get_logger
from .custom import (
    EXIT_INTERNAL,
    DegenerateDataError,
    LikelihoodStationError,
    UsageError,
)

logger = get_logger(__name__)


def log_exception(exc: BaseException, command: Optional[str] = None, level: str = "error") -> None:
    """Log exception with context"""
    log_data: Dict[str, Any] = {
        "exception_type": type(exc).__name__,
        "message": str(exc),
        "command": command,
    }

    # Add specific details for custom exceptions
    if isinstance(exc, LikelihoodStationError):
        log_data.update(
            {
                "error_code": exc.error_code,
                "exit_code": exc.exit_code,
                "details": exc.details,
            }
        )
    else:
        # Add traceback for unexpected exceptions
        log_data["traceback"] = "".join(
            traceback.format_exception(type(exc), exc, exc.__traceback__)
        )

    if level == "warning":
        logger.warning("command_failed", **log_data)
    elif level == "info":
        logger.info("command_failed", **log_data)
    else:
        logger.error("command_failed", **log_data)


def error_payload(exc: BaseException) -> Tuple[int, Dict[str, Any]]:
    """Exit code and report payload for an exception."""
    if isinstance(exc, LikelihoodStationError):
        return exc.exit_code, exc.to_dict()
    return EXIT_INTERNAL, {
        "error": True,
        "message": f"Internal error: {type(exc).__name__}: {exc}",
        "exit_code": EXIT_INTERNAL,
        "error_code": "INTERNAL_ERROR",
    }


def _level(exc: BaseException) -> str:
    if isinstance(exc, (UsageError, DegenerateDataError)):
        return "warning"
    return "error"


def handle_exception(
    exc: BaseException,
    fmt: str = "json",
    command: Optional[str] = None,
    stream: Optional[TextIO] = None,
) -> int:
    """
    Log ``exc``, print its payload and return the process exit code

    Args:
        exc: exception raised by a command
        fmt: "json" or "text"
        command: subcommand name for the log
        stream: output stream (stdout by default)

    Returns:
        Exit code (1 for unexpected exceptions)
    """
    stream = stream or sys.stdout
    log_exception(exc, command, _level(exc))
    code, payload = error_payload(exc)
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str), file=stream)
    else:
        print(f"error: {payload['message']}", file=stream)
    return code
