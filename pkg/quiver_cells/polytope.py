"""Lattice polytopes: intrinsic lattice, vertices, facets, edges, smoothness, equivalence.

A :class:`LatticePolytope` is an affine subspace cut by a box, stored as its
constraint system together with its sorted lattice points. Facets, widths and
supports are computed in intrinsic coordinates, i.e. in a Z-basis of the
saturated difference lattice, so widths are lattice widths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from itertools import product as cartesian
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from quiver_cells import config, linalg
from quiver_cells.errors import BudgetExceededError, EmptyPolytopeError, InputError
from quiver_cells.flows import flow_system
from quiver_cells.logging_utils import get_logger
from quiver_cells.points import ConstraintSystem, enumerate_points
from quiver_cells.quiver import Quiver, Weight, full_weight, is_balanced, prime_decompose

logger = get_logger(__name__)

Point = Tuple[int, ...]


@dataclass(frozen=True)
class Facet:
    """Facet {⟨normal, y⟩ = offset} with ⟨normal, y⟩ >= offset on the polytope.

    ``normal`` is primitive in intrinsic coordinates; ``tight`` holds the
    indices of the lattice points on the facet.
    """

    normal: Tuple[int, ...]
    offset: int
    tight: FrozenSet[int]

    def value(self, y: Sequence[int]) -> int:
        return linalg.dot(self.normal, y) - self.offset


@dataclass(frozen=True)
class EdgeData:
    edges: FrozenSet[Tuple[int, int]]
    neighbours: FrozenSet[Tuple[int, int]]

    def edges_at(self, i: int) -> List[int]:
        return sorted(b if a == i else a for a, b in self.edges if i in (a, b))


@dataclass(frozen=True)
class AffineEquivalence:
    """y ↦ matrix·y + translation between intrinsic coordinates of two polytopes."""

    matrix: Tuple[Tuple[int, ...], ...]
    translation: Tuple[int, ...]
    point_map: Tuple[int, ...]


@dataclass(frozen=True)
class LatticePolytope:
    """Lattice polytope with its defining system and lattice points.

    ``origin`` is ``"quiver"`` for quiver polytopes, cells and their products;
    the quiver-only theorems (degree 3 generation, support smoothness) apply
    to those.
    """

    system: ConstraintSystem
    points: Tuple[Point, ...]
    label: str = ""
    origin: str = "cube_slice"
    quiver: Optional[Quiver] = field(default=None, compare=False)
    weight: Optional[Weight] = field(default=None, compare=False)
    bounds: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    # construction ---------------------------------------------------

    @classmethod
    def from_quiver(
        cls,
        q: Quiver,
        theta: Mapping[str, int],
        bounds: Optional[Sequence[int]] = None,
        label: str = "",
    ) -> "LatticePolytope":
        """∇(Q,θ), or its cell at ``bounds`` = k̲."""
        theta = full_weight(q, theta)
        system = flow_system(q, theta, bounds)
        points = tuple(enumerate_points(system)) if is_balanced(q, theta) else ()
        return cls(
            system,
            points,
            label,
            "quiver",
            q,
            theta,
            tuple(bounds) if bounds is not None else None,
        )

    @classmethod
    def from_cube_slice(
        cls, dim: int, equalities: Sequence[Tuple[Sequence[int], int]], label: str = ""
    ) -> "LatticePolytope":
        """{x ∈ [0,1]^dim : a·x = b for each (a, b)}, assumed to be a lattice polytope."""
        rows = tuple((tuple(int(c) for c in a), int(b)) for a, b in equalities)
        system = ConstraintSystem(dim, rows, (0,) * dim, (1,) * dim)
        return cls(system, tuple(enumerate_points(system)), label, "cube_slice")

    # basic data -----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.points

    @property
    def ambient_dim(self) -> int:
        return self.system.dim

    def require_nonempty(self) -> None:
        if self.is_empty:
            raise EmptyPolytopeError(f"polytope {self.label or '(unnamed)'} has no lattice points")

    @cached_property
    def point_index(self) -> Dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def basis(self) -> Tuple[Point, ...]:
        """Z-basis (columns) of the saturated lattice of differences."""
        self.require_nonempty()
        base = self.points[0]
        diffs = [linalg.sub(p, base) for p in self.points[1:]]
        return tuple(linalg.saturated_basis(diffs, self.ambient_dim))

    @cached_property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _left_inverse(self) -> List[List[Fraction]]:
        return linalg.left_inverse(self.basis) if self.basis else []

    def intrinsic(self, x: Sequence[int], degree: int = 1) -> Point:
        """Coordinates of x ∈ aff(degree·∇) in the intrinsic basis, origin degree·p₀."""
        shifted = linalg.sub(x, linalg.scale(degree, self.points[0]))
        y = linalg.apply_integral(self._left_inverse, shifted)
        if y is None:
            raise InputError("point is not in the affine lattice of the polytope")
        return y

    @cached_property
    def intrinsic_points(self) -> Tuple[Point, ...]:
        return tuple(self.intrinsic(p) for p in self.points)

    def contains(self, x: Sequence[int], k: int = 1) -> bool:
        """x ∈ k∇ for integer x (k = 0 means x = 0)."""
        if k == 1:
            return tuple(x) in self.point_index
        return self.system.contains(x, k)

    def dilation(self, k: int) -> List[Point]:
        """Lattice points of k∇."""
        if k == 1:
            return list(self.points)
        return enumerate_points(self.system, k)

    def count_dilation(self, k: int) -> int:
        return len(self.dilation(k))

    # vertices and facets --------------------------------------------

    @cached_property
    def vertex_indices(self) -> Tuple[int, ...]:
        """Lattice points whose active constraints have full ambient rank."""
        self.require_nonempty()
        return tuple(
            i for i, x in enumerate(self.points)
            if linalg.rank(self.system.tight_rows(x)) == self.ambient_dim
        )

    @property
    def vertices(self) -> List[Point]:
        return [self.points[i] for i in self.vertex_indices]

    @cached_property
    def facets(self) -> Tuple[Facet, ...]:
        """Facets from the coordinate bounds whose tight sets have dimension dim−1."""
        self.require_nonempty()
        n = self.dimension
        if n == 0:
            return ()
        found: Dict[FrozenSet[int], Facet] = {}
        ys = self.intrinsic_points
        p0 = self.points[0]
        for coord in range(self.ambient_dim):
            row = tuple(b[coord] for b in self.basis)
            g = linalg.content(row)
            if g == 0:
                continue
            for bound, sign in ((self.system.lower[coord], 1), (self.system.upper[coord], -1)):
                tight = frozenset(i for i, x in enumerate(self.points) if x[coord] == bound)
                if not tight or tight in found:
                    continue
                if linalg.affine_rank([ys[i] for i in tight]) != n - 1:
                    continue
                normal = tuple(sign * c // g for c in row)
                offset = sign * (bound - p0[coord]) // g
                found[tight] = Facet(normal, offset, tight)
        return tuple(sorted(found.values(), key=lambda f: sorted(f.tight)))

    def facets_by_vertex_subsets(self) -> Tuple[Facet, ...]:
        """Facets by brute force over affinely independent vertex subsets (cross-check)."""
        self.require_nonempty()
        n = self.dimension
        verts = self.vertex_indices
        if len(verts) > config.MAX_VERTICES or n > config.MAX_FACET_DIM:
            raise BudgetExceededError("brute-force facet search (vertices/dim)", config.MAX_VERTICES)
        if n == 0:
            return ()
        ys = self.intrinsic_points
        found: Dict[FrozenSet[int], Facet] = {}
        for subset in combinations(verts, n):
            base = ys[subset[0]]
            diffs = [linalg.sub(ys[i], base) for i in subset[1:]]
            kernel = linalg.integer_kernel(diffs, n) if diffs else [(1,)]
            if len(kernel) != 1:
                continue
            normal = kernel[0]
            offset = linalg.dot(normal, base)
            values = [linalg.dot(normal, y) for y in ys]
            if all(v >= offset for v in values):
                pass
            elif all(v <= offset for v in values):
                normal = tuple(-c for c in normal)
                offset = -offset
            else:
                continue
            tight = frozenset(i for i, y in enumerate(ys) if linalg.dot(normal, y) == offset)
            if tight in found or linalg.affine_rank([ys[i] for i in tight]) != n - 1:
                continue
            found[tight] = Facet(normal, offset, tight)
        return tuple(sorted(found.values(), key=lambda f: sorted(f.tight)))

    def facet_width(self, facet: Facet) -> int:
        return max(facet.value(y) for y in self.intrinsic_points)

    @cached_property
    def is_compressed(self) -> bool:
        """Every facet has lattice width 1."""
        return all(self.facet_width(f) == 1 for f in self.facets)

    # edges and smoothness -------------------------------------------

    def face_of(self, indices: Sequence[int]) -> FrozenSet[int]:
        """Lattice points of the smallest face containing the given points."""
        common = [f for f in self.facets if all(i in f.tight for i in indices)]
        face = frozenset(range(len(self.points)))
        for f in common:
            face &= f.tight
        return face

    @cached_property
    def edge_data(self) -> EdgeData:
        ys = self.intrinsic_points
        edges = set()
        neighbours = set()
        for i, j in combinations(self.vertex_indices, 2):
            face = self.face_of((i, j))
            if len(face) == 2:
                edges.add((i, j))
                neighbours.add((i, j))
            elif linalg.affine_rank([ys[k] for k in face]) == 1:
                edges.add((i, j))
        return EdgeData(frozenset(edges), frozenset(neighbours))

    def edge_directions(self, i: int) -> List[Point]:
        ys = self.intrinsic_points
        return [linalg.primitive(linalg.sub(ys[j], ys[i])) for j in self.edge_data.edges_at(i)]

    def is_smooth_vertex(self, i: int) -> bool:
        """dim primitive edge directions forming a basis of the intrinsic lattice."""
        directions = self.edge_directions(i)
        if len(directions) != self.dimension:
            return False
        return linalg.is_unimodular_basis(directions)

    @cached_property
    def singular_vertices(self) -> Tuple[int, ...]:
        return tuple(i for i in self.vertex_indices if not self.is_smooth_vertex(i))

    @property
    def all_vertices_smooth(self) -> bool:
        return not self.singular_vertices

    # support of quiver points ---------------------------------------

    def smooth_by_support(self, i: int) -> bool:
        """Arrows in the support of the vertex span a connected spanning subquiver."""
        if self.quiver is None or self.bounds is not None:
            raise InputError("support smoothness needs a quiver polytope without cell bounds")
        x = self.points[i]
        g = nx.MultiGraph()
        g.add_nodes_from(self.quiver.vertices)
        for arrow, value in zip(self.quiver.arrows, x):
            if value:
                g.add_edge(arrow.tail, arrow.head)
        return nx.is_connected(g)

    # fingerprint ----------------------------------------------------

    @cached_property
    def fingerprint(self) -> Tuple:
        degrees = sorted(len(self.edge_data.edges_at(i)) for i in self.vertex_indices)
        return (
            self.dimension,
            len(self.points),
            len(self.vertex_indices),
            len(self.facets),
            tuple(degrees),
            self.count_dilation(2),
        )


def smooth_vertex(p: LatticePolytope, vertex: Sequence[int]) -> bool:
    """Smoothness of the vertex given by its ambient coordinates."""
    i = p.point_index.get(tuple(vertex))
    if i is None or i not in p.vertex_indices:
        raise InputError("not a vertex of the polytope")
    return p.is_smooth_vertex(i)


def product(p1: LatticePolytope, p2: LatticePolytope) -> LatticePolytope:
    """Cartesian product in the direct sum of the ambient spaces."""
    system = p1.system.product(p2.system)
    points = tuple(sorted(a + b for a in p1.points for b in p2.points))
    origin = "quiver" if p1.origin == p2.origin == "quiver" else "product"
    label = f"{p1.label or 'P'} x {p2.label or 'P'}"
    return LatticePolytope(system, points, label, origin)


def integral_affine_equivalent(
    p1: LatticePolytope, p2: LatticePolytope, budget: Optional[int] = None
) -> Optional[AffineEquivalence]:
    """Unimodular affine map of intrinsic lattices taking p1 onto p2, or None.

    Fingerprints are compared first. Then a frame of dim+1 affinely
    independent points of p1, picked greedily from the points with the fewest
    signature-compatible images, is sent to every compatible ordered tuple of
    points of p2; the induced rational map is accepted when it is integral,
    unimodular and bijective on lattice points.
    """
    p1.require_nonempty()
    p2.require_nonempty()
    if p1.fingerprint != p2.fingerprint:
        return None
    n = p1.dimension
    if len(p1.points) > config.MAX_VERTICES:
        raise BudgetExceededError("equivalence search (points)", config.MAX_VERTICES)
    ys1, ys2 = p1.intrinsic_points, p2.intrinsic_points
    if n == 0:
        return AffineEquivalence((), linalg.sub(ys2[0], ys1[0]), (0,))

    def signature(p: LatticePolytope, i: int) -> Tuple[bool, int]:
        return (i in p.vertex_indices, len(p.edge_data.edges_at(i)) if i in p.vertex_indices else 0)

    images_of: Dict[Tuple[bool, int], List[int]] = {}
    for j in range(len(ys2)):
        images_of.setdefault(signature(p2, j), []).append(j)
    # most constrained points first: fewest compatible images in p2
    order = sorted(range(len(ys1)), key=lambda i: (len(images_of.get(signature(p1, i), [])), i))
    frame = [order[0]]
    for i in order[1:]:
        if len(frame) == n + 1:
            break
        if linalg.affine_rank([ys1[j] for j in frame + [i]]) == len(frame):
            frame.append(i)
    f1 = [linalg.sub(ys1[i], ys1[frame[0]]) for i in frame[1:]]

    target_set = {y: j for j, y in enumerate(ys2)}
    candidates = [images_of.get(signature(p1, i), []) for i in frame]
    limit = budget or config.NODE_BUDGET
    tried = 0
    for images in cartesian(*candidates):
        if len(set(images)) < n + 1:
            continue
        tried += 1
        if tried > limit:
            raise BudgetExceededError("equivalence search (frames)", limit)
        f2 = [linalg.sub(ys2[j], ys2[images[0]]) for j in images[1:]]
        # M @ F1 == F2 with the frame differences as columns
        m = linalg.solve_rational([list(c) for c in zip(*f1)], [list(c) for c in zip(*f2)])
        if m is None or any(e.denominator != 1 for row in m for e in row):
            continue
        matrix = tuple(tuple(e.numerator for e in row) for row in m)
        if not linalg.is_unimodular_basis(matrix):
            continue
        image0 = tuple(sum(a * b for a, b in zip(row, ys1[frame[0]])) for row in matrix)
        translation = linalg.sub(ys2[images[0]], image0)
        point_map = []
        for y in ys1:
            image = linalg.add(tuple(sum(a * b for a, b in zip(row, y)) for row in matrix), translation)
            j = target_set.get(image)
            if j is None:
                break
            point_map.append(j)
        else:
            logger.debug("equivalence found after %d frames", tried)
            return AffineEquivalence(matrix, translation, tuple(point_map))
    return None


def product_decomposition_check(q: Quiver, theta: Mapping[str, int]) -> bool:
    """∇(Q,θ) equals the product of the polytopes of its prime blocks.

    The blocks partition the arrows, so the comparison is a coordinate
    permutation of the lattice points.
    """
    whole = LatticePolytope.from_quiver(q, theta, label="whole")
    decomposition = prime_decompose(q, theta)
    order = [q.arrow_index[a] for c in decomposition.components for a in c.quiver.arrow_ids]
    if sorted(order) != list(range(len(q.arrows))):
        return False
    if not order:
        return True
    parts = [
        LatticePolytope.from_quiver(c.quiver, c.weight, label=f"block{i}")
        for i, c in enumerate(decomposition.components)
        if c.quiver.arrows
    ]
    joined = reduce(product, parts)
    permuted = {tuple(x[i] for i in order) for x in whole.points}
    return permuted == set(joined.points)
