"""
Timing metrics for model builds, verification runs and commands.
"""
import time
import logging
import uuid
from typing import Dict, Any, Iterator, Optional
from contextlib import contextmanager
from dataclasses import dataclass, field
import json

logger = logging.getLogger(__name__)


@dataclass
class RunMetrics:
    """Metrics for a single command or model build."""
    trace_id: str
    label: str

    start_time: float = field(default_factory=time.time)
    stages: Dict[str, float] = field(default_factory=dict)
    total_time_ms: Optional[float] = None

    # Outcome
    checks: int = 0
    failures: int = 0

    def to_dict(self) -> Dict[str, Any]:
        """Convert metrics to dictionary for logging."""
        return {
            "trace_id": self.trace_id,
            "label": self.label,
            "stages_ms": {name: round(ms, 3) for name, ms in self.stages.items()},
            "total_time_ms": round(self.total_time_ms, 3) if self.total_time_ms is not None else None,
            "checks": self.checks,
            "failures": self.failures,
        }

    def emit(self, level: str = "INFO"):
        """Emit metrics as structured JSON log."""
        log_message = json.dumps(self.to_dict())

        if level == "INFO":
            logger.info(f"METRICS: {log_message}")
        elif level == "WARNING":
            logger.warning(f"METRICS: {log_message}")
        else:
            logger.error(f"METRICS: {log_message}")


class MetricsCollector:
    """Collects per-stage timings in milliseconds."""

    def __init__(self, label: str):
        self.metrics = RunMetrics(trace_id=str(uuid.uuid4()), label=label)

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time a named stage; repeated stages accumulate."""
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = (time.perf_counter() - start) * 1000
            self.metrics.stages[name] = self.metrics.stages.get(name, 0.0) + elapsed

    def record_checks(self, checks: int, failures: int = 0):
        self.metrics.checks += checks
        self.metrics.failures += failures

    def finish(self) -> RunMetrics:
        """Finish metrics collection."""
        self.metrics.total_time_ms = (time.time() - self.metrics.start_time) * 1000
        return self.metrics


@contextmanager
def track_run(command: str) -> Iterator[MetricsCollector]:
    """Context manager for tracking a CLI or API command."""
    collector = MetricsCollector(command)
    try:
        yield collector
    finally:
        metrics = collector.finish()
        metrics.emit("WARNING" if metrics.failures else "INFO")
