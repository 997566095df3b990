"""
Stage timing and Groebner deadlines
"""

from __future__ import annotations

import contextvars
import signal
import threading
import time
from contextlib import contextmanager
from typing import Dict, Iterator, Optional

from ..config import settings
from ..exceptions.custom import ComputationTimeoutError
from ..logging_config import get_logger

logger = get_logger(__name__)

_timeout_override: contextvars.ContextVar[Optional[float]] = contextvars.ContextVar(
    "groebner_timeout", default=None
)


def current_timeout() -> Optional[float]:
    """Seconds allowed per Groebner computation, or None for no limit."""
    override = _timeout_override.get()
    return override if override is not None else settings.GROEBNER_TIMEOUT


@contextmanager
def groebner_timeout(seconds: Optional[float]) -> Iterator[None]:
    """Override the per-computation time budget inside the block."""
    token = _timeout_override.set(seconds)
    try:
        yield
    finally:
        _timeout_override.reset(token)


class _Expired(BaseException):
    # BaseException so library code catching Exception cannot swallow it
    pass


@contextmanager
def deadline(stage: str, seconds: Optional[float] = None) -> Iterator[None]:
    """
    Abort the block with ComputationTimeoutError after ``seconds``.

    Uses an interval timer, so it only arms in the main thread; elsewhere the
    block runs unbounded and a debug event is logged.
    """
    if seconds is None:
        seconds = current_timeout()
    if seconds is None:
        yield
        return

    if threading.current_thread() is not threading.main_thread():
        logger.debug("deadline_unavailable", stage=stage, reason="not main thread")
        yield
        return

    def _alarm(signum, frame):
        raise _Expired()

    previous_handler = signal.signal(signal.SIGALRM, _alarm)
    previous_timer = signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    except _Expired:
        logger.warning("groebner_timeout", stage=stage, seconds=seconds)
        raise ComputationTimeoutError(stage, seconds) from None
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous_handler)
        if previous_timer[0] > 0:
            signal.setitimer(signal.ITIMER_REAL, *previous_timer)


class StageTimer:
    """Wall-clock seconds per named pipeline stage."""

    def __init__(self) -> None:
        self.timings: Dict[str, float] = {}
        self.timed_out: Optional[str] = None

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        except ComputationTimeoutError:
            self.timed_out = name
            raise
        finally:
            elapsed = time.perf_counter() - start
            self.timings[name] = self.timings.get(name, 0.0) + elapsed
            logger.debug("stage_finished", stage=name, seconds=round(elapsed, 6))
