"""Generation degree of the toric ideal of a lattice polytope.

I(∇) is generated in degree ≤ r iff for every r' > r and every s ∈ S(∇)_r'
the graph on the degree-1 divisors of s, joining m₁ and m₂ when
s − m₁ − m₂ ∈ (r'−2)∇, is connected. The degree check runs over
r' = 2..D; for quiver polytopes degree 3 is already conclusive because their
toric ideals are generated in degree at most 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from quiver_cells import config, linalg
from quiver_cells.errors import EmptyPolytopeError, NormalityError, VerificationError
from quiver_cells.logging_utils import get_logger
from quiver_cells.parallel import map_ordered
from quiver_cells.polytope import LatticePolytope, Point, product

logger = get_logger(__name__)

QUIVER_DEGREE_BOUND = 3
QUIVER_LICENSE = "toric ideals of quiver polytopes are generated in degree at most 3"


@dataclass(frozen=True)
class SemigroupElement:
    point: Point
    degree: int


@dataclass(frozen=True)
class RelationWitness:
    """Binomial t^left − t^right of the given degree; sides are sorted point lists."""

    element: SemigroupElement
    left: Tuple[Point, ...]
    right: Tuple[Point, ...]

    def __post_init__(self) -> None:
        k = self.element.degree
        if len(self.left) != k or len(self.right) != k:
            raise VerificationError(f"witness sides must have {k} factors")
        for side in (self.left, self.right):
            if tuple(map(sum, zip(*side))) != tuple(self.element.point):
                raise VerificationError(f"witness side {side} does not sum to {self.element.point}")
        # factors of one monomial share a ~_s class, so distinct classes share no factor
        if set(self.left) & set(self.right):
            raise VerificationError("witness sides share a factor")

    @property
    def degree(self) -> int:
        return self.element.degree


@dataclass
class GenerationReport:
    generation_degree: int
    max_degree: int
    conclusive: bool
    licensed_by: Optional[str]
    witnesses: List[RelationWitness] = field(default_factory=list)
    multi_class_counts: Dict[int, int] = field(default_factory=dict)


def semigroup_degree(p: LatticePolytope, k: int) -> List[SemigroupElement]:
    """S(∇)_k."""
    return [SemigroupElement(x, k) for x in p.dilation(k)]


def divides(p: LatticePolytope, m: Sequence[int], s: SemigroupElement) -> bool:
    """m ≤ s: s − m ∈ (k−1)∇."""
    if s.degree < 1:
        return False
    rest = linalg.sub(s.point, m)
    if s.degree == 1:
        return not any(rest)
    return p.contains(rest, s.degree - 1)


def _contains_degree(p: LatticePolytope, x: Sequence[int], k: int) -> bool:
    if k == 0:
        return not any(x)
    return p.contains(x, k)


def sim_s_classes(p: LatticePolytope, s: SemigroupElement) -> List[List[int]]:
    """Classes (as sorted point indices) of ~_s on the degree-1 divisors of s."""
    k = s.degree
    divisors = [i for i, m in enumerate(p.points) if divides(p, m, s)]
    g = nx.Graph()
    g.add_nodes_from(divisors)
    if k >= 2:
        for a_pos, a in enumerate(divisors):
            rest_a = linalg.sub(s.point, p.points[a])
            for b in divisors[a_pos + 1:]:
                if _contains_degree(p, linalg.sub(rest_a, p.points[b]), k - 2):
                    g.add_edge(a, b)
    classes = [sorted(c) for c in nx.connected_components(g)]
    return sorted(classes)


def factorize(p: LatticePolytope, s: SemigroupElement, first: Optional[int] = None) -> Tuple[Point, ...]:
    """k lattice points of ∇ summing to s; ``first`` fixes one factor by index."""
    k = s.degree

    def search(rest: Point, degree: int, start: int) -> Optional[List[Point]]:
        if degree == 0:
            return [] if not any(rest) else None
        if degree == 1:
            return [rest] if rest in p.point_index else None
        for i in range(start, len(p.points)):
            m = p.points[i]
            remainder = linalg.sub(rest, m)
            if p.contains(remainder, degree - 1):
                tail = search(remainder, degree - 1, i)
                if tail is not None:
                    return [m] + tail
        return None

    if first is not None:
        m = p.points[first]
        tail = search(linalg.sub(s.point, m), k - 1, 0)
        factors = None if tail is None else [m] + tail
    else:
        factors = search(s.point, k, 0)
    if factors is None:
        raise NormalityError(f"degree-{k} element {s.point} is not a sum of {k} lattice points")
    return tuple(sorted(factors))


def normality_spot_check(p: LatticePolytope, k_max: int = 3) -> bool:
    """Every lattice point of k∇, k ≤ k_max, factors into k lattice points."""
    for k in range(2, k_max + 1):
        for s in semigroup_degree(p, k):
            factorize(p, s)
    return True


def witness_binomial(p: LatticePolytope, s: SemigroupElement) -> Optional[RelationWitness]:
    """Binomial whose two monomials draw their factors from different ~_s classes.

    None when s has a single class.
    """
    classes = sim_s_classes(p, s)
    if len(classes) < 2:
        return None
    witness = RelationWitness(s, factorize(p, s, classes[0][0]), factorize(p, s, classes[1][0]))
    check_witness(p, witness)
    return witness


def check_witness(p: LatticePolytope, witness: RelationWitness) -> None:
    """Both sides are factorizations of the element lying in different ~_s classes."""
    index = p.point_index
    if any(m not in index for m in witness.left + witness.right):
        raise VerificationError("witness factors must be lattice points of the polytope")
    owner = {i: n for n, c in enumerate(sim_s_classes(p, witness.element)) for i in c}
    left = {owner.get(index[m]) for m in witness.left}
    right = {owner.get(index[m]) for m in witness.right}
    if None in left or None in right or len(left) != 1 or left == right:
        raise VerificationError(f"witness at {witness.element.point} does not separate two ~_s classes")


def _classes_at(p: LatticePolytope, s: SemigroupElement) -> int:
    return len(sim_s_classes(p, s))


def generation_degree(
    p: LatticePolytope,
    max_degree: Optional[int] = None,
    threads: Optional[int] = None,
    check_normality: Optional[bool] = None,
) -> GenerationReport:
    """Largest degree r' ≤ D with a multi-class element (0 if none).

    Degenerate polytopes (at most one lattice point) report 0 and are
    conclusive. Quiver polytopes stop at degree 3 and are conclusive.
    """
    d = config.MAX_DEGREE if max_degree is None else max_degree
    if check_normality is None:
        check_normality = config.CHECK_NORMALITY
    if p.is_empty:
        raise EmptyPolytopeError("generation degree of an empty polytope")
    if len(p.points) <= 1:
        return GenerationReport(0, d, True, "at most one lattice point")

    quiver_bound = p.origin == "quiver"
    top = min(d, QUIVER_DEGREE_BOUND) if quiver_bound else d
    degree = 0
    counts: Dict[int, int] = {}
    top_elements: List[SemigroupElement] = []
    for k in range(2, top + 1):
        elements = semigroup_degree(p, k)
        if check_normality:
            for s in elements:
                factorize(p, s)
        nclasses = map_ordered(lambda s: _classes_at(p, s), elements, threads)
        multi = [s for s, c in zip(elements, nclasses) if c > 1]
        counts[k] = len(multi)
        if multi:
            degree = k
            top_elements = multi
        logger.info("degree %d: %d elements, %d with several classes", k, len(elements), len(multi))

    conclusive = quiver_bound and d >= QUIVER_DEGREE_BOUND
    witnesses = [w for w in (witness_binomial(p, s) for s in top_elements[: config.MAX_WITNESSES]) if w is not None]
    return GenerationReport(
        generation_degree=degree,
        max_degree=d,
        conclusive=conclusive,
        licensed_by=QUIVER_LICENSE if conclusive else None,
        witnesses=witnesses,
        multi_class_counts=counts,
    )


@dataclass(frozen=True)
class ProductCheck:
    degree_first: int
    degree_second: int
    degree_product: int
    holds: bool


def product_generation_check(
    p1: LatticePolytope, p2: LatticePolytope, max_degree: Optional[int] = None
) -> ProductCheck:
    """Quadratic generation of ∇₁ × ∇₂ iff both factors are quadratically generated."""
    r1 = generation_degree(p1, max_degree).generation_degree
    r2 = generation_degree(p2, max_degree).generation_degree
    rp = generation_degree(product(p1, p2), max_degree).generation_degree
    holds = (rp <= 2) == (r1 <= 2 and r2 <= 2)
    return ProductCheck(r1, r2, rp, holds)


@dataclass(frozen=True)
class ClassComparison:
    element: SemigroupElement
    cell_classes: List[List[Point]]
    ambient_classes: List[List[Point]]


def compare_cell_and_ambient_classes(
    cell: LatticePolytope, ambient: LatticePolytope, s: SemigroupElement
) -> ClassComparison:
    """~_s on the cell's divisors versus on the ambient polytope's divisors."""
    cell_classes = [[cell.points[i] for i in c] for c in sim_s_classes(cell, s)]
    ambient_classes = [[ambient.points[i] for i in c] for c in sim_s_classes(ambient, s)]
    return ClassComparison(s, cell_classes, ambient_classes)
