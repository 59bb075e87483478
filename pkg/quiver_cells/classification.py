"""Classification of unit cells of star subdivisions of small cubic graphs.

A prime cell of dimension d comes from G* of a 3-regular graph G on 2d−2
vertices with weight −1 on d−1 vertices, −2 on the rest and +1 on every
sink. Every placement is built, cells of the wrong dimension are set aside,
and the rest are grouped up to integral-affine equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from quiver_cells import linalg
from quiver_cells.catalog import CASE_I_FREE_ARROWS, CASE_I_POINTS, CatalogEntry, birkhoff, builtin_graphs, star_weight
from quiver_cells.ideal import generation_degree
from quiver_cells.logging_utils import get_logger
from quiver_cells.parallel import map_ordered
from quiver_cells.polytope import LatticePolytope, integral_affine_equivalent

logger = get_logger(__name__)


@dataclass(frozen=True)
class Placement:
    graph: str
    minus_one: Tuple[str, ...]

    @property
    def label(self) -> str:
        return f"{self.graph}[-1: {','.join(self.minus_one)}]"


@dataclass
class CellClass:
    representative: Placement
    members: List[Placement]
    polytope: LatticePolytope
    generation_degree: int
    is_birkhoff: bool

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ClassificationReport:
    graph: str
    dimension: int
    placements: int
    classes: List[CellClass] = field(default_factory=list)
    excluded: List[Tuple[Placement, int]] = field(default_factory=list)


def cell_dimension(g: nx.Graph) -> int:
    return g.number_of_nodes() // 2 + 1


def enumerate_placements(name: str, g: nx.Graph) -> List[Placement]:
    """All C(2d−2, d−1) choices of the −1 vertices."""
    vertices = sorted(str(v) for v in g.nodes)
    d = cell_dimension(g)
    return [Placement(name, combo) for combo in combinations(vertices, d - 1)]


def placement_polytope(g: nx.Graph, placement: Placement) -> LatticePolytope:
    q, theta = star_weight(g, placement.minus_one)
    return LatticePolytope.from_quiver(q, theta, label=placement.label)


def classify_cells(
    name: str, g: nx.Graph, threads: Optional[int] = None, birkhoff3: Optional[LatticePolytope] = None
) -> ClassificationReport:
    d = cell_dimension(g)
    placements = enumerate_placements(name, g)
    polytopes = map_ordered(lambda pl: placement_polytope(g, pl), placements, threads)
    report = ClassificationReport(name, d, len(placements))
    b3 = birkhoff3 or birkhoff(3).polytope
    for placement, p in zip(placements, polytopes):
        dim = p.dimension if not p.is_empty else -1
        if dim != d:
            report.excluded.append((placement, dim))
            continue
        for cls in report.classes:
            if integral_affine_equivalent(cls.polytope, p) is not None:
                cls.members.append(placement)
                break
        else:
            report.classes.append(
                CellClass(
                    placement,
                    [placement],
                    p,
                    generation_degree(p).generation_degree,
                    integral_affine_equivalent(p, b3) is not None,
                )
            )
    logger.info("%s: %d placements, %d classes, %d excluded", name, len(placements), len(report.classes), len(report.excluded))
    return report


@dataclass
class MergedClass:
    polytope: LatticePolytope
    generation_degree: int
    is_birkhoff: bool
    sources: List[str]


def merge_classes(reports: Sequence[ClassificationReport]) -> List[MergedClass]:
    """Union of the classes of several graphs, up to equivalence."""
    merged: List[MergedClass] = []
    for report in reports:
        for cls in report.classes:
            for m in merged:
                if m.polytope.dimension == cls.polytope.dimension and integral_affine_equivalent(m.polytope, cls.polytope):
                    m.sources.append(cls.representative.label)
                    break
            else:
                merged.append(MergedClass(cls.polytope, cls.generation_degree, cls.is_birkhoff, [cls.representative.label]))
    return merged


def classify_dimension(d: int, threads: Optional[int] = None) -> Tuple[List[ClassificationReport], List[MergedClass]]:
    """Reports for every built-in cubic graph on 2d−2 vertices plus the merged classes."""
    b3 = birkhoff(3).polytope
    reports = [
        classify_cells(name, g, threads, b3)
        for name, g in builtin_graphs().items()
        if cell_dimension(g) == d
    ]
    return reports, merge_classes(reports)


def cubic_graphs_bruteforce(n: int) -> List[nx.Graph]:
    """Simple 3-regular graphs on n vertices up to isomorphism, by exhaustive edge choice.

    The smallest unsaturated vertex takes its missing partners among the
    larger unsaturated vertices; smaller ones are already saturated.
    """
    if n % 2 or n < 4:
        return []
    found: List[nx.Graph] = []

    def extend(degree: List[int], chosen: List[Tuple[int, int]]) -> None:
        u = next((v for v in range(n) if degree[v] < 3), None)
        if u is None:
            g = nx.Graph(chosen)
            if not any(nx.is_isomorphic(g, h) for h in found):
                found.append(g)
            return
        free = [v for v in range(u + 1, n) if degree[v] < 3]
        for partners in combinations(free, 3 - degree[u]):
            for v in partners:
                degree[v] += 1
                chosen.append((u, v))
            degree[u] = 3
            extend(degree, chosen)
            degree[u] -= len(partners)
            for v in partners:
                degree[v] -= 1
                chosen.pop()

    extend([0] * n, [])
    return found


def builtin_graph_list_complete(n: int) -> bool:
    """Built-in graphs on n vertices match the brute-force list up to isomorphism."""
    builtin = [g for g in builtin_graphs().values() if g.number_of_nodes() == n]
    brute = cubic_graphs_bruteforce(n)
    return len(builtin) == len(brute) and all(any(nx.is_isomorphic(b, h) for h in brute) for b in builtin)


@dataclass
class CaseIReport:
    labelled_points: Dict[str, Tuple[int, ...]]
    matches_table: bool
    dependency: Tuple[int, ...]
    singular_count: int
    smooth_count: int


def reproduce_case_i(entry: CatalogEntry) -> CaseIReport:
    """Lattice points in the free-arrow coordinates, their affine dependency and smoothness.

    The dependency is computed on the cell's own lattice points, taken in table
    label order; it is empty when the points do not match the table.
    """
    p = entry.polytope
    q = entry.quiver
    assert q is not None
    columns = [q.arrow_index[a] for a in CASE_I_FREE_ARROWS]
    projected = {tuple(x[c] for c in columns): i for i, x in enumerate(p.points)}
    by_table = {label: coords for label, coords in CASE_I_POINTS.items() if coords in projected}
    matches = len(by_table) == len(CASE_I_POINTS) == len(p.points)
    dependency: Tuple[int, ...] = ()
    if matches:
        labels = sorted(CASE_I_POINTS)
        points = [p.points[projected[CASE_I_POINTS[b]]] for b in labels]
        # columns (x_b, 1) over the full arrow coordinates
        rows = [[x[r] for x in points] for r in range(len(q.arrows))] + [[1] * len(points)]
        kernel = linalg.integer_kernel(rows, len(points))
        if len(kernel) == 1:
            dependency = kernel[0]
            if next(c for c in dependency if c) < 0:
                dependency = tuple(-c for c in dependency)
    singular = len(p.singular_vertices)
    return CaseIReport(by_table, matches, dependency, singular, len(p.vertex_indices) - singular)
