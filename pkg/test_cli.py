"""
Tests for the tqc command line: outputs, formats and exit codes.

Run with pytest or directly: python test_cli.py
"""
import json

import pytest

from quiver_cells import compressed, config
from quiver_cells.cli import build_parser, main


@pytest.fixture(autouse=True)
def keep_budget(monkeypatch):
    # main() writes the --budget value into config
    monkeypatch.setattr(config, "NODE_BUDGET", config.NODE_BUDGET)


def run_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if code == 0 or out.strip().startswith("{") else None


def test_parser_defaults():
    args = build_parser().parse_args(["ideal", "birkhoff(3)"])
    assert args.format == "json"
    assert args.max_degree == config.MAX_DEGREE
    assert args.threads == config.THREADS


def test_polytope_birkhoff(capsys):
    code, data = run_json(capsys, "polytope", "birkhoff(3)")
    assert code == 0
    assert data["dim"] == 4
    assert data["lattice_points"] == 6
    assert len(data["vertices"]) == 6
    assert len(data["facets"]) == 9
    assert len(data["singular_vertices"]) == 6
    assert data["compressed"] is True
    assert data["chi"] == 4


def test_polytope_kronecker(capsys):
    code, data = run_json(capsys, "polytope", "catalog:kronecker(1)")
    assert code == 0
    assert data["dim"] == 1
    assert len(data["vertices"]) == 2
    assert data["singular_vertices"] == []


def test_ideal_birkhoff(capsys):
    code, data = run_json(capsys, "ideal", "birkhoff(3)")
    assert code == 0
    assert data["generation_degree"] == 3
    assert data["conclusive"] is True
    assert data["witnesses"][0]["degree"] == 3


def test_ideal_pn_three(capsys):
    code, data = run_json(capsys, "ideal", "pn(3)", "--max-degree", "4")
    assert code == 0
    assert data["degree_checked"] == 4
    assert data["generation_degree"] == "≤4-inconclusive"
    assert data["largest_degree_found"] == 3
    assert data["conclusive"] is False
    assert data["witnesses"][0]["degree"] == 3


def test_cells_kronecker(capsys):
    code, data = run_json(capsys, "cells", "kronecker(2)")
    assert code == 0
    assert len(data["cells"]) == 2
    assert data["total_nonempty_cells"] == 5
    assert all(c["generation_degree"] == 0 for c in data["cells"])


def test_all_cells_lists_every_nonempty_cell(capsys):
    code, data = run_json(capsys, "cells", "kronecker(2)", "--all-cells")
    assert code == 0
    assert len(data["cells"]) == data["total_nonempty_cells"] == 5
    assert sorted(c["dim"] for c in data["cells"]) == [0, 0, 0, 1, 1]
    assert all(c["generation_degree"] == 0 for c in data["cells"])


def test_cells_birkhoff_is_single(capsys):
    code, data = run_json(capsys, "cells", "birkhoff(3)")
    assert code == 0
    assert len(data["cells"]) == 1
    assert data["cells"][0]["lattice_points"] == 6


def test_classify_three(capsys):
    code, data = run_json(capsys, "classify", "3")
    assert code == 0
    assert len(data["graphs"]) == 1
    assert len(data["classes"]) == 1
    assert data["classes"][0]["generation_degree"] == 0


def test_compressed_chain(capsys):
    code, data = run_json(capsys, "compressed", "chain(2)", "--max-degree", "4")
    assert code == 0
    assert len(data["singular_vertices"]) == 1
    assert data["adjacent_singular_pairs"] == []
    assert data["theorem"]["precondition"] is True
    assert data["theorem"]["holds"] is True
    assert data["grobner"]["verified"] is True
    gb = data["grobner"]
    assert len(gb["generators"]) == 1
    assert gb["verified_to_degree"] == 4
    assert [c["d"] for c in gb["counts"]] == [1, 2, 3, 4]
    assert all(c["standard"] == c["semigroup"] for c in gb["counts"])
    assert gb["counts"][0]["semigroup"] == 5


def test_compressed_reuses_the_generation_report(capsys, monkeypatch):
    def recompute(*args, **kwargs):
        raise AssertionError("generation degree computed twice")

    monkeypatch.setattr(compressed, "generation_degree", recompute)
    code, data = run_json(capsys, "compressed", "chain(2)", "--max-degree", "3")
    assert code == 0
    assert data["theorem"]["holds"] is True


def test_compressed_birkhoff_skips_grobner(capsys):
    code, data = run_json(capsys, "compressed", "birkhoff(3)")
    assert code == 0
    assert "grobner" not in data
    assert data["theorem"]["precondition"] is False
    assert data["generation"]["generation_degree"] == 3


def test_catalog_json(capsys):
    code, data = run_json(capsys, "catalog", "k4star")
    assert code == 0
    assert len(data["vertices"]) == 10
    assert len(data["arrows"]) == 12
    code, data = run_json(capsys, "catalog", "pn(2)")
    assert data["ambient_dim"] == 4
    assert len(data["equalities"]) == 2
    assert set(data["equalities"][0]) == {"coeffs", "rhs"}


def test_quiver_file_round_trip(capsys, tmp_path):
    code, data = run_json(capsys, "catalog", "chain(2)")
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, summary = run_json(capsys, "polytope", str(path))
    assert code == 0
    assert summary["lattice_points"] == 5


def test_quiver_file_weights_key(capsys, tmp_path):
    path = tmp_path / "kronecker.json"
    data = {
        "vertices": ["v1", "v2"],
        "arrows": [{"id": "a1", "tail": "v1", "head": "v2"}, {"id": "a2", "tail": "v1", "head": "v2"}],
        "weights": {"v1": -2, "v2": 2},
    }
    path.write_text(json.dumps(data), encoding="utf-8")
    code, summary = run_json(capsys, "polytope", str(path))
    assert code == 0
    assert summary["lattice_points"] == 3
    code, emitted = run_json(capsys, "catalog", str(path))
    assert emitted["weights"] == {"v1": -2, "v2": 2}


def test_quiver_file_without_weights(capsys, tmp_path):
    path = tmp_path / "bare.json"
    data = {"vertices": ["v1", "v2"], "arrows": [{"id": "a1", "tail": "v1", "head": "v2"}]}
    path.write_text(json.dumps(data), encoding="utf-8")
    assert main(["polytope", str(path)]) == 1
    code, emitted = run_json(capsys, "catalog", str(path))
    assert code == 0
    assert "weights" not in emitted


def test_cube_slice_round_trip(capsys, tmp_path):
    code, data = run_json(capsys, "catalog", "pn(2)")
    path = tmp_path / "pn2.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, summary = run_json(capsys, "polytope", str(path))
    assert code == 0
    assert summary["lattice_points"] == 4
    assert summary["dim"] == 2


def test_cube_slice_file(capsys, tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps({"ambient_dim": 3, "equalities": [{"coeffs": [1, 1, 1], "rhs": 1}]}), encoding="utf-8")
    code, data = run_json(capsys, "polytope", str(path))
    assert code == 0
    assert data["dim"] == 2
    assert "chi" not in data


def test_text_format(capsys):
    code = main(["polytope", "kronecker(1)", "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert "POLYTOPE kronecker(1)" in out
    assert "RUN METRICS" in out


def test_unknown_catalog_exits_one(capsys):
    assert main(["polytope", "nosuch(3)"]) == 1
    assert main(["polytope", "birkhoff(99)"]) == 1


def test_cyclic_quiver_exits_one(tmp_path):
    path = tmp_path / "cycle.json"
    data = {
        "vertices": ["x", "y"],
        "arrows": [{"id": "p", "tail": "x", "head": "y"}, {"id": "q", "tail": "y", "head": "x"}],
        "weights": [0, 0],
    }
    path.write_text(json.dumps(data), encoding="utf-8")
    assert main(["polytope", str(path)]) == 1


def test_empty_polytope_exits_two(tmp_path):
    path = tmp_path / "empty.json"
    data = {"vertices": ["v1", "v2"], "arrows": [{"id": "a", "tail": "v1", "head": "v2"}], "weights": {"v1": -1, "v2": 2}}
    path.write_text(json.dumps(data), encoding="utf-8")
    assert main(["polytope", str(path)]) == 2
    assert main(["ideal", str(path)]) == 2


def test_budget_exits_three():
    assert main(["polytope", "birkhoff(3)", "--budget", "2"]) == 3


def test_run_config_bounds_exit_one():
    assert main(["ideal", "birkhoff(3)", "--max-degree", "2"]) == 1
    assert main(["polytope", "birkhoff(3)", "--budget", "0"]) == 1
    assert main(["polytope", "kronecker(1)", "--max-degree", "1"]) == 0


def test_cells_need_a_quiver():
    assert main(["cells", "pn(2)"]) == 1


def test_save_writes_report_and_metrics(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TQC_REPORT_FOLDER", str(tmp_path))
    config.reset_run_directory_cache()
    try:
        assert main(["ideal", "kronecker(2)", "--save"]) == 0
        run_dir = tmp_path / next(p.name for p in tmp_path.iterdir())
        report = json.loads((run_dir / "report.json").read_text(encoding="utf-8"))
        metrics = json.loads((run_dir / "metrics.json").read_text(encoding="utf-8"))
    finally:
        config.reset_run_directory_cache()
    assert report["generation_degree"] == 2
    assert metrics["summary"]["command"] == "ideal"
    assert metrics["summary"]["exit_code"] == 0
    assert [s["name"] for s in metrics["steps"]] == ["generation_degree"]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
