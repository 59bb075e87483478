"""Utilities for capturing runtime metrics of an analysis run.

The CLI records each major step (enumeration, facets, degree checks) as well
as per-item timings (placements, polytopes). Metrics are persisted alongside
the saved report when ``--save`` is given.
"""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from quiver_cells import config


@dataclass
class StepMetric:
    """Represents timing information for a discrete analysis step."""

    name: str
    started_at: datetime
    duration_seconds: float


@dataclass
class ItemMetric:
    """Timing and status for a single analysed item."""

    label: str
    started_at: datetime
    duration_seconds: float
    status: str
    error: Optional[str] = None


@dataclass
class RunSummary:
    command: str
    items: int
    failed: int
    exit_code: int
    started_at: datetime
    completed_at: datetime

    @property
    def runtime(self) -> timedelta:
        return self.completed_at - self.started_at

    @property
    def runtime_seconds(self) -> float:
        return self.runtime.total_seconds()


class RunMetrics:
    """Capture step and per-item timing metrics for a run."""

    def __init__(self, output_dir: Optional[Path] = None) -> None:
        self.started_at: datetime = datetime.utcnow()
        self.completed_at: Optional[datetime] = None
        self.steps: List[StepMetric] = []
        self.items: List[ItemMetric] = []
        self._item_starts: Dict[str, float] = {}
        self._item_start_times: Dict[str, datetime] = {}
        self.summary: Optional[RunSummary] = None
        self.metadata: Dict[str, str] = {}
        self._output_dir = Path(output_dir) if output_dir is not None else None

    @property
    def output_dir(self) -> Path:
        if self._output_dir is None:
            self._output_dir = Path(config.DATA_DIR())
        return self._output_dir

    def add_metadata(self, **kwargs) -> None:
        """Attach additional metadata about the run (e.g., settings)."""

        for key, value in kwargs.items():
            if value is None:
                continue
            self.metadata[key] = str(value)

    @contextmanager
    def track_step(self, name: str) -> Iterable[None]:
        """Context manager to record duration of a named step."""

        start_time = datetime.utcnow()
        start_perf = time.perf_counter()
        try:
            yield
        finally:
            duration = time.perf_counter() - start_perf
            self.steps.append(StepMetric(name=name, started_at=start_time, duration_seconds=duration))

    def start_item(self, label: str) -> None:
        self._item_start_times[label] = datetime.utcnow()
        self._item_starts[label] = time.perf_counter()

    def end_item(self, label: str, status: str = "ok", error: Optional[str] = None) -> None:
        start_perf = self._item_starts.pop(label, None)
        start_time = self._item_start_times.pop(label, datetime.utcnow())
        duration = 0.0 if start_perf is None else time.perf_counter() - start_perf
        self.items.append(ItemMetric(label, start_time, duration, status, error))

    def finalize(self, *, command: str, exit_code: int) -> None:
        """Record summary data and mark the run as completed."""

        self.completed_at = datetime.utcnow()
        self.summary = RunSummary(
            command=command,
            items=len(self.items),
            failed=sum(1 for item in self.items if item.status != "ok"),
            exit_code=exit_code,
            started_at=self.started_at,
            completed_at=self.completed_at,
        )

    def to_dict(self) -> Dict[str, object]:
        """Serialize metrics to a JSON-friendly dictionary."""

        summary = None
        if self.summary is not None:
            summary = {
                "command": self.summary.command,
                "items": self.summary.items,
                "failed": self.summary.failed,
                "exit_code": self.summary.exit_code,
                "started_at": self.summary.started_at.isoformat(),
                "completed_at": self.summary.completed_at.isoformat(),
                "runtime_seconds": self.summary.runtime_seconds,
            }
        return {
            "metadata": self.metadata,
            "steps": [
                {"name": s.name, "started_at": s.started_at.isoformat(), "duration_seconds": s.duration_seconds}
                for s in self.steps
            ],
            "items": [
                {
                    "label": i.label,
                    "started_at": i.started_at.isoformat(),
                    "duration_seconds": i.duration_seconds,
                    "status": i.status,
                    "error": i.error,
                }
                for i in self.items
            ],
            "summary": summary,
        }

    def save(self, filename: str = "metrics.json") -> Path:
        """Persist metrics to ``filename`` within the run directory."""

        self.output_dir.mkdir(parents=True, exist_ok=True)
        output_path = self.output_dir / filename
        with output_path.open("w", encoding="utf-8") as file:
            json.dump(self.to_dict(), file, indent=2)
        return output_path

    def print_console_report(self) -> None:
        """Timing summary in the banner layout used by the text reports."""

        if self.summary is None:
            print("[METRICS] Summary unavailable; run did not complete cleanly.")
            return
        print("\n" + "=" * 70)
        print(" " * 25 + "RUN METRICS")
        print("=" * 70)
        print(f"  Command             : {self.summary.command}")
        print(f"  Total runtime       : {self.summary.runtime_seconds:.2f} seconds")
        print(f"  Items analysed      : {self.summary.items} ({self.summary.failed} failed)")
        if self.steps:
            print("\n[STEPS]")
            print("-" * 70)
            for step in self.steps:
                print(f"  {step.name:30s}: {step.duration_seconds:.3f} s")
        print("=" * 70 + "\n")
