"""
Timing and memory tracking for spectrum, eigenfunction and verification runs.

Durations never enter verification reports; they are logged and exposed to
the CLI metadata block through ``OperationLog.summary``.
"""

import os
import threading
import time
from collections import deque
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Any

import psutil
import structlog

logger = structlog.get_logger(__name__)


@dataclass
class PerformanceMetrics:
    """Performance metrics for one operation."""

    operation: str
    start_time: float
    end_time: float
    duration: float
    memory_usage: float
    success: bool
    error_message: str | None = None

    @classmethod
    def create(
        cls,
        operation: str,
        start_time: float,
        end_time: float,
        success: bool,
        error_message: str | None = None,
    ) -> "PerformanceMetrics":
        """Create performance metrics with calculated values."""
        return cls(
            operation=operation,
            start_time=start_time,
            end_time=end_time,
            duration=end_time - start_time,
            memory_usage=psutil.Process(os.getpid()).memory_info().rss / 1024 / 1024,  # MB
            success=success,
            error_message=error_message,
        )


class OperationLog:
    """Bounded, thread-safe record of recent operations."""

    def __init__(self, maxlen: int = 1000):
        self._metrics: deque[PerformanceMetrics] = deque(maxlen=maxlen)
        self._lock = threading.Lock()

    def record(self, metrics: PerformanceMetrics) -> None:
        with self._lock:
            self._metrics.append(metrics)

    def clear(self) -> None:
        with self._lock:
            self._metrics.clear()

    def entries(self) -> list[PerformanceMetrics]:
        with self._lock:
            return list(self._metrics)

    def summary(self) -> dict[str, Any]:
        """Aggregate durations per operation plus the peak resident memory."""
        entries = self.entries()
        if not entries:
            return {"total_operations": 0}
        per_operation: dict[str, dict[str, float]] = {}
        for m in entries:
            bucket = per_operation.setdefault(m.operation, {"count": 0, "total_seconds": 0.0})
            bucket["count"] += 1
            bucket["total_seconds"] += m.duration
        return {
            "total_operations": len(entries),
            "failed_operations": sum(not m.success for m in entries),
            "operations": per_operation,
            "peak_memory_mb": max(m.memory_usage for m in entries),
        }


_operation_log = OperationLog()


def get_operation_log() -> OperationLog:
    return _operation_log


@contextmanager
def track_operation(operation: str, **context: Any) -> Iterator[None]:
    """
    Time a block, log it and record it in the global operation log.

    Example:
        >>> with track_operation("spectrum", family="scarf"):
        ...     levels = spectrum(spec)
    """
    start = time.perf_counter()
    logger.debug("operation_start", operation=operation, **context)
    try:
        yield
    except Exception as e:
        metrics = PerformanceMetrics.create(operation, start, time.perf_counter(), False, str(e))
        _operation_log.record(metrics)
        logger.warning("operation_failed", **asdict(metrics), **context)
        raise
    metrics = PerformanceMetrics.create(operation, start, time.perf_counter(), True)
    _operation_log.record(metrics)
    logger.info("operation_done", operation=operation, duration=metrics.duration, **context)
