"""Input loading plus JSON and text rendering of analysis results."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from quiver_cells.catalog import CatalogEntry, get_catalog
from quiver_cells.classification import ClassificationReport, MergedClass
from quiver_cells.compressed import GBReport, SingularAdjacency, TheoremCheck
from quiver_cells.errors import InputError
from quiver_cells.flows import Cell
from quiver_cells.ideal import GenerationReport, RelationWitness
from quiver_cells.polytope import LatticePolytope
from quiver_cells.quiver import chi, quiver_from_json, quiver_to_json


def load_target(target: str) -> CatalogEntry:
    """``catalog:name(args)``, a bare catalog name, or a JSON file (quiver or cube slice)."""
    path = Path(target)
    if not target.startswith("catalog:") and path.suffix == ".json":
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {target}: {exc}") from exc
        if "vertices" in data:
            q, theta = quiver_from_json(data)
            return CatalogEntry(path.stem, q, theta)
        try:
            dim = int(data["ambient_dim"])
            equalities = [(tuple(int(c) for c in e["coeffs"]), int(e["rhs"])) for e in data["equalities"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed cube-slice JSON: {exc}") from exc
        return CatalogEntry(path.stem, cube_slice=(dim, equalities))
    return get_catalog(target)


def entry_to_json(entry: CatalogEntry) -> Dict[str, object]:
    if entry.quiver is not None:
        return quiver_to_json(entry.quiver, entry.weight)
    dim, equalities = entry.cube_slice  # type: ignore[misc]
    return {"ambient_dim": dim, "equalities": [{"coeffs": list(a), "rhs": b} for a, b in equalities]}


def polytope_summary(entry: CatalogEntry, p: LatticePolytope) -> Dict[str, object]:
    data: Dict[str, object] = {
        "name": entry.name,
        "dim": p.dimension,
        "lattice_points": len(p.points),
        "vertices": [list(v) for v in p.vertices],
        "facets": [
            {"normal": list(f.normal), "offset": f.offset, "width": p.facet_width(f), "points": len(f.tight)}
            for f in p.facets
        ],
        "compressed": p.is_compressed,
        "singular_vertices": [list(p.points[i]) for i in p.singular_vertices],
    }
    if entry.quiver is not None:
        data["chi"] = chi(entry.quiver)
        data["smooth_by_support"] = [
            list(p.points[i]) for i in p.vertex_indices if p.smooth_by_support(i)
        ]
    return data


def witness_to_json(w: RelationWitness) -> Dict[str, object]:
    return {
        "degree": w.degree,
        "element": list(w.element.point),
        "left": [list(x) for x in w.left],
        "right": [list(x) for x in w.right],
    }


def degree_label(report: GenerationReport) -> object:
    """The generation degree, or ``"≤D-inconclusive"`` when the check up to D does not settle it."""
    if report.conclusive:
        return report.generation_degree
    return f"≤{report.max_degree}-inconclusive"


def generation_to_json(report: GenerationReport) -> Dict[str, object]:
    return {
        "degree_checked": report.max_degree,
        "generation_degree": degree_label(report),
        "largest_degree_found": report.generation_degree,
        "conclusive": report.conclusive,
        "licensed_by": report.licensed_by,
        "multi_class_counts": {str(k): v for k, v in report.multi_class_counts.items()},
        "witnesses": [witness_to_json(w) for w in report.witnesses],
    }


def cells_to_json(cells: Sequence[Cell], polytopes: Sequence[LatticePolytope], degrees: Sequence[GenerationReport], total: int) -> Dict[str, object]:
    return {
        "total_nonempty_cells": total,
        "cells": [
            {
                "lower": list(cell.lower),
                "lattice_points": len(cell.points),
                "dim": p.dimension,
                "compressed": p.is_compressed,
                "generation_degree": degree_label(r),
            }
            for cell, p, r in zip(cells, polytopes, degrees)
        ],
    }


def classification_to_json(reports: Sequence[ClassificationReport], merged: Sequence[MergedClass]) -> Dict[str, object]:
    return {
        "graphs": [
            {
                "graph": r.graph,
                "dimension": r.dimension,
                "placements": r.placements,
                "classes": [
                    {
                        "representative": c.representative.label,
                        "members": c.size,
                        "lattice_points": len(c.polytope.points),
                        "generation_degree": c.generation_degree,
                        "birkhoff_b3": c.is_birkhoff,
                    }
                    for c in r.classes
                ],
                "excluded": [{"placement": pl.label, "dim": dim} for pl, dim in r.excluded],
            }
            for r in reports
        ],
        "classes": [
            {
                "lattice_points": len(m.polytope.points),
                "generation_degree": m.generation_degree,
                "birkhoff_b3": m.is_birkhoff,
                "found_in": m.sources,
            }
            for m in merged
        ],
    }


def compressed_to_json(
    p: LatticePolytope,
    adjacency: SingularAdjacency,
    theorem: TheoremCheck,
    generation: Optional[GenerationReport],
    gb: Optional[GBReport],
) -> Dict[str, object]:
    data: Dict[str, object] = {
        "compressed": p.is_compressed,
        "singular_vertices": [list(p.points[i]) for i in adjacency.singular],
        "adjacent_singular_pairs": [[list(p.points[a]), list(p.points[b])] for a, b in adjacency.pairs],
        "theorem": {"name": theorem.name, "precondition": theorem.precondition, "holds": theorem.holds, "detail": theorem.detail},
    }
    if generation is not None:
        data["generation"] = generation_to_json(generation)
    if gb is not None:
        data["grobner"] = {
            "generators": [
                {"leading": [list(p.points[i]) for i in b.leading], "trailing": [list(p.points[i]) for i in b.trailing]}
                for b in gb.generators
            ],
            "verified": gb.verified,
            "verified_to_degree": gb.verified_to_degree,
            "failed_degree": gb.failed_degree,
            "counts": [
                {"d": d, "standard": gb.standard_counts[d], "semigroup": gb.lattice_counts[d]}
                for d in sorted(gb.lattice_counts)
                if d in gb.standard_counts
            ],
        }
    return data


def render_text(title: str, data: Dict[str, object]) -> str:
    """Banner-style plain text rendering of a JSON report."""
    lines: List[str] = ["=" * 70, f"{title:^70}", "=" * 70]

    def emit(key: str, value: object, indent: int) -> None:
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}[{key.upper()}]" if indent == 0 else f"{pad}{key}:")
            for k, v in value.items():
                emit(str(k), v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}[{key.upper()}]" if indent == 0 else f"{pad}{key}:")
            for n, item in enumerate(value, 1):
                lines.append(f"{pad}  #{n}")
                for k, v in item.items():
                    emit(str(k), v, indent + 2)
        else:
            lines.append(f"{pad}{key:24s}: {value}")

    for key, value in data.items():
        emit(key, value, 0)
    lines.append("=" * 70)
    return "\n".join(lines)


@dataclass
class Output:
    title: str
    data: Dict[str, object]
    exit_code: int = 0

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2)
        return render_text(self.title, self.data)
