"""
Tests for run metrics, run-directory numbering, logging tags, errors and
ordered parallel mapping.

Run with pytest or directly: python test_metrics_config.py
"""
import json
import logging
import time

import pytest

from quiver_cells import config, linalg
from quiver_cells.errors import (
    BudgetExceededError,
    EmptyPolytopeError,
    GrobnerOrderError,
    InputError,
    NormalityError,
    QuiverCellsError,
    VerificationError,
)
from quiver_cells.logging_utils import TagFormatter, get_logger
from quiver_cells.metrics import RunMetrics
from quiver_cells.parallel import map_ordered


def test_track_step_and_items(tmp_path):
    metrics = RunMetrics(output_dir=tmp_path)
    metrics.add_metadata(command="ideal", target=None, threads=2)
    with metrics.track_step("enumerate"):
        time.sleep(0.01)
    metrics.start_item("cell[0, 1]")
    metrics.end_item("cell[0, 1]")
    metrics.start_item("cell[1, 0]")
    metrics.end_item("cell[1, 0]", status="failed", error="budget")
    metrics.finalize(command="cells", exit_code=3)

    assert metrics.metadata == {"command": "ideal", "threads": "2"}
    assert metrics.steps[0].name == "enumerate"
    assert metrics.steps[0].duration_seconds > 0
    assert metrics.summary.items == 2
    assert metrics.summary.failed == 1
    assert metrics.summary.runtime_seconds >= 0

    path = metrics.save()
    data = json.loads(path.read_text(encoding="utf-8"))
    assert path.parent == tmp_path
    assert data["summary"]["exit_code"] == 3
    assert [i["status"] for i in data["items"]] == ["ok", "failed"]


def test_console_report_before_finalize(capsys):
    RunMetrics().print_console_report()
    assert "[METRICS]" in capsys.readouterr().out


def test_run_directory_numbering(tmp_path, monkeypatch):
    monkeypatch.setenv("TQC_REPORT_FOLDER", str(tmp_path))
    config.reset_run_directory_cache()
    try:
        first = config.DATA_DIR()
        assert config.get_run_directory() == first
        (tmp_path / first.rsplit("/", 1)[-1] / "report.json").write_text("{}", encoding="utf-8")
        config.reset_run_directory_cache()
        second = config.DATA_DIR()
        assert second == f"{first} (2)"
    finally:
        config.reset_run_directory_cache()


def test_tag_formatter():
    formatter = TagFormatter()
    record = logging.LogRecord("quiver_cells.flows", logging.INFO, __file__, 1, "found %d cells", (3,), None)
    assert formatter.format(record) == "[FLOWS] found 3 cells"
    record = logging.LogRecord("quiver_cells.cli", logging.ERROR, __file__, 1, "bad input", (), None)
    assert formatter.format(record) == "[CLI:ERROR] bad input"


def test_logger_names_are_namespaced():
    assert get_logger("cli").name == "quiver_cells.cli"
    assert get_logger("quiver_cells.ideal").name == "quiver_cells.ideal"


def test_exit_codes():
    assert InputError("x").exit_code == 1
    assert GrobnerOrderError("x").exit_code == 1
    assert EmptyPolytopeError("x").exit_code == 2
    assert BudgetExceededError("search", 10).exit_code == 3
    assert NormalityError("x").exit_code == 4
    assert issubclass(NormalityError, VerificationError)
    assert issubclass(InputError, ValueError)
    assert all(issubclass(e, QuiverCellsError) for e in (InputError, EmptyPolytopeError, BudgetExceededError))
    assert "1,000" in str(BudgetExceededError("search", 1000))


def test_map_ordered_keeps_input_order():
    items = list(range(20))

    def slow_square(n):
        time.sleep(0.001 * (20 - n))
        return n * n

    assert map_ordered(slow_square, items, threads=4) == [n * n for n in items]
    assert map_ordered(slow_square, items, threads=1) == [n * n for n in items]
    assert map_ordered(slow_square, [], threads=4) == []


def test_integer_kernel_and_saturation():
    kernel = linalg.integer_kernel([[1, 1, 1]], 3)
    assert len(kernel) == 2
    assert all(sum(v) == 0 for v in kernel)
    assert linalg.rank(kernel) == 2
    basis = linalg.saturated_basis([(2, 0), (0, 2)], 2)
    assert linalg.is_unimodular_basis(basis)
    assert linalg.invariant_factors([[2, 0], [0, 3]]) == (1, 6)
    assert linalg.extended_gcd(12, 18)[0] == 6
    assert linalg.affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
