import functools
import json
import logging
import os
import time
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel


class TimingRecord(BaseModel):
    timestamp: str
    elapsed_time: float
    args: Optional[str] = None
    kwargs: Optional[str] = None


def _clip(value: Any) -> Optional[str]:
    return str(value)[:100] if value else None


class PerformanceTracker:
    """
    Wall-clock timings of the heavy numerical routines (analysis, ring projection,
    reconstruction, verification suites), grouped by routine name.

    Calls slower than `alert_threshold` seconds are logged as warnings; with
    `log_file` set every record is also appended to that file.
    """

    def __init__(self, log_file: Optional[str] = None, alert_threshold: float = 1.0) -> None:
        self.log_file = log_file
        self.alert_threshold = alert_threshold
        self.records: Dict[str, List[TimingRecord]] = {}
        self.logger: logging.Logger = logging.getLogger("performance_tracker")

        if log_file:
            os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
            handler = logging.FileHandler(log_file)
            handler.setFormatter(logging.Formatter("%(asctime)s - PERF - %(levelname)s - %(message)s"))
            self.logger.addHandler(handler)

    def track_time(self, func_name: str, elapsed_time: float, *args, **kwargs) -> None:
        """Store one timing under `func_name`; arguments are kept as clipped strings."""
        self.records.setdefault(func_name, []).append(TimingRecord(
            timestamp=datetime.now().isoformat(),
            elapsed_time=elapsed_time,
            args=_clip(args),
            kwargs=_clip(kwargs),
        ))

        if elapsed_time < self.alert_threshold:
            self.logger.debug(f"⏱️ {func_name}: {elapsed_time:.4f}s")
        else:
            self.logger.warning(f"🐢 {func_name} is slow: {elapsed_time:.4f}s (threshold {self.alert_threshold}s)")

    def get_stats(self, func_name: Optional[str] = None) -> Dict[str, Any]:
        if func_name is None:
            return {name: self._summary(self._times(name)) for name in self.records}
        if func_name not in self.records:
            return {"error": f"No timings recorded for '{func_name}'"}
        return {"function": func_name, **self._summary(self._times(func_name))}

    def _times(self, func_name: str) -> List[float]:
        return [record.elapsed_time for record in self.records[func_name]]

    @staticmethod
    def _summary(times: List[float]) -> Dict[str, Any]:
        count = len(times)
        total = sum(times)
        return {
            "call_count": count,
            "total_time": total,
            "avg_time": total / count if count else 0,
            "min_time": min(times, default=0),
            "max_time": max(times, default=0),
        }

    def export_to_json(self, output_file: str) -> None:
        payload = {name: [record.dict() for record in records] for name, records in self.records.items()}
        with open(output_file, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2)

    def reset(self) -> None:
        self.records.clear()

    def measure_time(self, func: Callable) -> Callable:
        """Decorator form of `track_time`, keyed by the function's qualified name."""
        @functools.wraps(func)
        def timed(*args, **kwargs):
            started = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                self.track_time(func.__qualname__, time.perf_counter() - started)

        return timed


tracker = PerformanceTracker(alert_threshold=5.0)


class TimedBlock:
    """Times a `with` block; verification suites read `elapsed_ms` for their reports."""

    def __init__(self, name: str, tracker: PerformanceTracker = tracker) -> None:
        self.name = name
        self.tracker = tracker
        self.started: float = 0.0
        self.elapsed: float = 0.0

    def __enter__(self) -> "TimedBlock":
        self.started = time.perf_counter()
        return self

    def __exit__(self, *exc_info: Any) -> None:
        self.elapsed = time.perf_counter() - self.started
        self.tracker.track_time(self.name, self.elapsed)

    @property
    def elapsed_ms(self) -> int:
        return int(round(self.elapsed * 1000.0))
