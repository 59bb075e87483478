"""Support calculus of compressed polytopes and the quadratic Gröbner basis check.

On a compressed polytope every facet has width one, so a lattice point of
k∇ is determined by its degree and its support: the facets it is not tight
on. Divisibility and neighbourhood become inclusions of supports.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from quiver_cells import config, linalg
from quiver_cells.errors import GrobnerOrderError
from quiver_cells.ideal import GenerationReport, SemigroupElement, generation_degree, semigroup_degree
from quiver_cells.logging_utils import get_logger
from quiver_cells.parallel import map_ordered
from quiver_cells.polytope import LatticePolytope, Point

logger = get_logger(__name__)

SupportSet = FrozenSet[int]


def support(p: LatticePolytope, s: SemigroupElement) -> SupportSet:
    """Indices of the facets that s is not tight on (relative to k∇)."""
    if not p.is_compressed:
        logger.warning("support of a point in the non-compressed polytope %s", p.label or "(unnamed)")
    y = p.intrinsic(s.point, s.degree)
    return frozenset(
        i for i, f in enumerate(p.facets)
        if linalg.dot(f.normal, y) != s.degree * f.offset
    )


def point_support(p: LatticePolytope, i: int) -> SupportSet:
    return frozenset(fi for fi, f in enumerate(p.facets) if i not in f.tight)


def divides_by_support(p: LatticePolytope, m: Sequence[int], s: SemigroupElement) -> bool:
    """m ≤ s iff supp(m) ⊆ supp(s) (compressed polytopes)."""
    return support(p, SemigroupElement(tuple(m), 1)) <= support(p, s)


def neighbours_by_support(p: LatticePolytope, i: int, j: int) -> bool:
    """No third lattice point has support inside supp(v₁) ∪ supp(v₂)."""
    union = point_support(p, i) | point_support(p, j)
    return not any(
        point_support(p, k) <= union for k in range(len(p.points)) if k not in (i, j)
    )


def neighbour_path(p: LatticePolytope, s: SemigroupElement, start: int, end: int) -> Optional[List[int]]:
    """Path of neighbouring vertices dividing s from ``start`` to ``end`` (BFS)."""
    supp = support(p, s)
    allowed = {i for i in range(len(p.points)) if point_support(p, i) <= supp}
    if start not in allowed or end not in allowed:
        return None
    adjacency: Dict[int, List[int]] = {i: [] for i in allowed}
    for a, b in p.edge_data.neighbours:
        if a in allowed and b in allowed:
            adjacency[a].append(b)
            adjacency[b].append(a)
    previous = {start: start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == end:
            path = [end]
            while path[-1] != start:
                path.append(previous[path[-1]])
            return path[::-1]
        for nxt in sorted(adjacency[node]):
            if nxt not in previous:
                previous[nxt] = node
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class SingularAdjacency:
    singular: Tuple[int, ...]
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def none_adjacent(self) -> bool:
        return not self.pairs


def singular_adjacency_check(p: LatticePolytope) -> SingularAdjacency:
    singular = set(p.singular_vertices)
    pairs = tuple(sorted((a, b) for a, b in p.edge_data.edges if a in singular and b in singular))
    return SingularAdjacency(tuple(sorted(singular)), pairs)


@dataclass(frozen=True)
class GrobnerOrder:
    """Facet order, vertex ranks (0 = smallest) and the induced monomial key."""

    facet_order: Tuple[int, ...]
    vertex_rank: Dict[int, int]
    singular: Optional[int]

    def monomial_key(self, factors: Sequence[int]) -> Tuple:
        """Larger key = larger monomial: higher degree, then fewer copies of the smallest differing vertex."""
        exponents = [0] * len(self.vertex_rank)
        for i in factors:
            exponents[self.vertex_rank[i]] += 1
        return (len(factors), tuple(-e for e in exponents))


def build_grobner_order(p: LatticePolytope) -> GrobnerOrder:
    """Order facets with supp(singular vertex) first, then vertices lexicographically by incidence."""
    singular = p.singular_vertices
    if len(singular) > 1:
        raise GrobnerOrderError(f"{len(singular)} singular vertices; at most one allowed")
    head: Tuple[int, ...] = ()
    if singular:
        head = tuple(sorted(point_support(p, singular[0])))
    facet_order = head + tuple(i for i in range(len(p.facets)) if i not in head)
    keys = {
        v: tuple(1 if f in point_support(p, v) else 0 for f in facet_order)
        for v in p.vertex_indices
    }
    ranked = sorted(p.vertex_indices, key=keys.__getitem__)
    return GrobnerOrder(facet_order, {v: r for r, v in enumerate(ranked)}, singular[0] if singular else None)


@dataclass(frozen=True)
class Binomial:
    leading: Tuple[int, int]
    trailing: Tuple[int, int]


@dataclass
class GBReport:
    verified: bool
    max_degree: int
    generators: List[Binomial] = field(default_factory=list)
    standard_counts: Dict[int, int] = field(default_factory=dict)
    lattice_counts: Dict[int, int] = field(default_factory=dict)
    failed_degree: Optional[int] = None

    @property
    def verified_to_degree(self) -> int:
        """Largest D with matching counts in every degree ≤ D."""
        return self.max_degree if self.failed_degree is None else self.failed_degree - 1


def quadratic_binomials(p: LatticePolytope, order: GrobnerOrder) -> List[Binomial]:
    """Every non-minimal quadratic monomial paired with the minimal one of its fibre."""
    fibres: Dict[Point, List[Tuple[int, int]]] = {}
    verts = sorted(order.vertex_rank)
    for a_pos, a in enumerate(verts):
        for b in verts[a_pos:]:
            fibres.setdefault(linalg.add(p.points[a], p.points[b]), []).append((a, b))
    binomials = []
    for pairs in fibres.values():
        if len(pairs) < 2:
            continue
        smallest = min(pairs, key=order.monomial_key)
        binomials.extend(Binomial(pair, smallest) for pair in pairs if pair != smallest)
    binomials.sort(key=lambda b: (b.leading, b.trailing))
    return binomials


def count_standard_monomials(order: GrobnerOrder, leading: Sequence[Tuple[int, int]], degree: int) -> int:
    """Degree-d monomials divisible by no quadratic leading term."""
    variables = sorted(order.vertex_rank, key=order.vertex_rank.__getitem__)
    forbidden = {frozenset(pair) if pair[0] != pair[1] else frozenset((pair[0],)) for pair in leading}
    squares = {pair[0] for pair in leading if pair[0] == pair[1]}

    def extend(start: int, chosen: List[int], remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for pos in range(start, len(variables)):
            v = variables[pos]
            if chosen and chosen[-1] == v and v in squares:
                continue
            if any(u != v and frozenset((u, v)) in forbidden for u in set(chosen)):
                continue
            chosen.append(v)
            total += extend(pos, chosen, remaining - 1)
            chosen.pop()
        return total

    return extend(0, [], degree)


def verify_quadratic_gb(
    p: LatticePolytope, order: Optional[GrobnerOrder] = None, max_degree: Optional[int] = None,
    threads: Optional[int] = None,
) -> GBReport:
    """Quadratic binomials form a Gröbner basis up to degree D iff standard counts match |S(∇)_d|."""
    d = config.MAX_DEGREE if max_degree is None else max_degree
    order = order or build_grobner_order(p)
    generators = quadratic_binomials(p, order)
    leading = [b.leading for b in generators]
    degrees = list(range(1, d + 1))
    standard = map_ordered(lambda k: count_standard_monomials(order, leading, k), degrees, threads)
    lattice = map_ordered(p.count_dilation, degrees, threads)
    report = GBReport(True, d, generators, dict(zip(degrees, standard)), dict(zip(degrees, lattice)))
    for k, a, b in zip(degrees, standard, lattice):
        if a != b:
            report.verified = False
            report.failed_degree = k
            break
    logger.info("quadratic GB check up to degree %d: %s", d, "verified" if report.verified else "failed")
    return report


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    precondition: bool
    holds: bool
    detail: str = ""


def no_adjacent_singular_implies_deg2(
    p: LatticePolytope, max_degree: Optional[int] = None, report: Optional[GenerationReport] = None
) -> TheoremCheck:
    """Compressed polytopes without adjacent singular vertices are quadratically generated.

    An existing generation report for ``p`` is reused instead of recomputed.
    """
    adjacency = singular_adjacency_check(p)
    precondition = p.is_compressed and adjacency.none_adjacent
    if not precondition:
        return TheoremCheck("no-adjacent-singular", False, True, "precondition fails")
    if report is None:
        report = generation_degree(p, max_degree)
    return TheoremCheck(
        "no-adjacent-singular",
        True,
        report.generation_degree <= 2,
        f"generation degree {report.generation_degree}",
    )


def knn_support_lemma(p: LatticePolytope, vertex_points: Sequence[int], s: SemigroupElement) -> bool:
    """Some given degree-1 point has support inside supp(s)."""
    supp = support(p, s)
    return any(point_support(p, i) <= supp for i in vertex_points)


def semigroup_supports(p: LatticePolytope, k: int) -> List[SupportSet]:
    return [support(p, s) for s in semigroup_degree(p, k)]
