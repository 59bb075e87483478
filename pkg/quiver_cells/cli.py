"""Command line interface: ``tqc <command> <target> [options]``.

Targets are ``catalog:name(args)`` or JSON files (quiver or cube slice).
Exit codes: 0 success, 1 bad input, 2 empty or degenerate polytope,
3 budget exceeded, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from quiver_cells import config
from quiver_cells.catalog import catalog_names
from quiver_cells.classification import classify_dimension
from quiver_cells.compressed import (
    build_grobner_order,
    no_adjacent_singular_implies_deg2,
    singular_adjacency_check,
    verify_quadratic_gb,
)
from quiver_cells.errors import InputError, QuiverCellsError
from quiver_cells.flows import enumerate_cells
from quiver_cells.ideal import generation_degree
from quiver_cells.logging_utils import configure_logging, get_logger
from quiver_cells.metrics import RunMetrics
from quiver_cells.polytope import LatticePolytope
from quiver_cells.reports import (
    Output,
    cells_to_json,
    classification_to_json,
    compressed_to_json,
    entry_to_json,
    generation_to_json,
    load_target,
    polytope_summary,
)

logger = get_logger("cli")

IDEAL_COMMANDS = ("ideal", "cells", "classify", "compressed")


@dataclass
class RunConfig:
    command: str
    target: Optional[str]
    max_degree: int
    output_format: str
    threads: int
    budget: int
    seed: int
    save: bool
    dim: Optional[int] = None
    all_cells: bool = False

    def __post_init__(self) -> None:
        if self.budget <= 0 or self.threads <= 0:
            raise InputError("--budget and --threads must be positive")
        if self.command in IDEAL_COMMANDS and self.max_degree < 3:
            raise InputError(f"--max-degree must be at least 3 for {self.command}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            target=getattr(args, "target", None),
            max_degree=args.max_degree,
            output_format=args.format,
            threads=args.threads,
            budget=args.budget,
            seed=args.seed,
            save=args.save,
            dim=getattr(args, "dim", None),
            all_cells=getattr(args, "all_cells", False),
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=config.MAX_DEGREE, help="degree bound D")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=int, default=config.THREADS)
    common.add_argument("--budget", type=int, default=config.NODE_BUDGET, help="enumeration node budget")
    common.add_argument("--seed", type=int, default=config.SEED)
    common.add_argument("--save", action="store_true", help="write report and metrics to the run directory")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tqc", description="Toric quiver cells toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("polytope", "dimension, vertices, facets, smoothness"),
        ("ideal", "generation degree with witness binomials"),
        ("cells", "nonempty unit cells with their generation degree"),
        ("compressed", "singular adjacency, quadratic generation, Gröbner check"),
        ("catalog", "print a catalog object as JSON"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument("target", help="catalog:name(args) or a JSON file; names: " + ", ".join(catalog_names()))
        if name == "cells":
            cmd.add_argument(
                "--all-cells", action="store_true", help="also list lower-dimensional cells (faces of maximal ones)"
            )
    classify = sub.add_parser("classify", parents=[common], help="classify prime cells of one dimension")
    classify.add_argument("dim", type=int)
    return parser


def cmd_polytope(run: RunConfig, metrics: RunMetrics) -> Output:
    entry = load_target(run.target or "")
    with metrics.track_step("enumerate"):
        p = entry.polytope
        p.require_nonempty()
    with metrics.track_step("geometry"):
        data = polytope_summary(entry, p)
    return Output(f"POLYTOPE {entry.name}", data)


def cmd_ideal(run: RunConfig, metrics: RunMetrics) -> Output:
    entry = load_target(run.target or "")
    p = entry.polytope
    p.require_nonempty()
    with metrics.track_step("generation_degree"):
        report = generation_degree(p, run.max_degree, run.threads)
    data = {"name": entry.name, "dim": p.dimension, "lattice_points": len(p.points)}
    data.update(generation_to_json(report))
    return Output(f"IDEAL {entry.name}", data)


def cmd_cells(run: RunConfig, metrics: RunMetrics) -> Output:
    entry = load_target(run.target or "")
    if entry.quiver is None:
        raise InputError("cells need a quiver target")
    p = entry.polytope
    p.require_nonempty()
    with metrics.track_step("enumerate_cells"):
        cells = enumerate_cells(entry.quiver, entry.weight or {}, p.points)
    polytopes: List[LatticePolytope] = []
    reports = []
    kept = []
    for cell in cells:
        label = f"cell{list(cell.lower)}"
        metrics.start_item(label)
        cp = LatticePolytope.from_quiver(entry.quiver, entry.weight or {}, bounds=cell.lower, label=label)
        if run.all_cells or cp.dimension == p.dimension:
            kept.append(cell)
            polytopes.append(cp)
            reports.append(generation_degree(cp, run.max_degree, run.threads))
        metrics.end_item(label)
    data = {"name": entry.name, "dim": p.dimension}
    data.update(cells_to_json(kept, polytopes, reports, len(cells)))
    return Output(f"CELLS {entry.name}", data)


def cmd_classify(run: RunConfig, metrics: RunMetrics) -> Output:
    d = run.dim or 0
    if d < 2:
        raise InputError("dimension must be at least 2")
    with metrics.track_step(f"classify d={d}"):
        reports, merged = classify_dimension(d, run.threads)
    if not reports:
        logger.warning("no built-in cubic graph on %d vertices", 2 * d - 2)
    data = {"dimension": d}
    data.update(classification_to_json(reports, merged))
    return Output(f"CLASSIFICATION d={d}", data)


def cmd_compressed(run: RunConfig, metrics: RunMetrics) -> Output:
    entry = load_target(run.target or "")
    p = entry.polytope
    p.require_nonempty()
    with metrics.track_step("singular_adjacency"):
        adjacency = singular_adjacency_check(p)
    with metrics.track_step("generation_degree"):
        generation = generation_degree(p, run.max_degree, run.threads)
    theorem = no_adjacent_singular_implies_deg2(p, run.max_degree, generation)
    gb = None
    if p.is_compressed and len(adjacency.singular) <= 1:
        with metrics.track_step("grobner"):
            gb = verify_quadratic_gb(p, build_grobner_order(p), run.max_degree, run.threads)
    exit_code = 0
    if (theorem.precondition and not theorem.holds) or (gb is not None and not gb.verified):
        exit_code = 4
    data = {"name": entry.name, "dim": p.dimension}
    data.update(compressed_to_json(p, adjacency, theorem, generation, gb))
    return Output(f"COMPRESSED {entry.name}", data, exit_code)


def cmd_catalog(run: RunConfig, metrics: RunMetrics) -> Output:
    entry = load_target(run.target or "")
    return Output(f"CATALOG {entry.name}", entry_to_json(entry))


COMMANDS = {
    "polytope": cmd_polytope,
    "ideal": cmd_ideal,
    "cells": cmd_cells,
    "classify": cmd_classify,
    "compressed": cmd_compressed,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("INFO" if args.verbose else None)
    try:
        run = RunConfig.from_args(args)
    except InputError as exc:
        logger.error("%s", exc)
        return exc.exit_code
    config.NODE_BUDGET = run.budget
    metrics = RunMetrics()
    metrics.add_metadata(command=run.command, target=run.target, max_degree=run.max_degree, threads=run.threads)
    try:
        output = COMMANDS[run.command](run, metrics)
    except QuiverCellsError as exc:
        logger.error("%s", exc)
        metrics.finalize(command=run.command, exit_code=exc.exit_code)
        return exc.exit_code
    print(output.render(run.output_format))
    metrics.finalize(command=run.command, exit_code=output.exit_code)
    if run.save:
        report_path = Path(config.DATA_DIR()) / "report.json"
        report_path.write_text(json.dumps(output.data, indent=2), encoding="utf-8")
        metrics.save()
        logger.info("saved report to %s", report_path)
    if run.output_format == "text":
        metrics.print_console_report()
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
