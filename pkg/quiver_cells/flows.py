"""Flows on quivers: dilations, cells, circulations and centering of triples.

Flow vectors are tuples of ints in arrow order of the quiver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from quiver_cells import config
from quiver_cells.errors import BudgetExceededError, InputError, NotACirculationError, VerificationError
from quiver_cells.logging_utils import get_logger
from quiver_cells.points import ConstraintSystem, enumerate_points
from quiver_cells.quiver import Quiver, Weight, full_weight, is_balanced, topological_arrow_order

logger = get_logger(__name__)

Flow = Tuple[int, ...]


@dataclass(frozen=True)
class FlowPoint:
    """Lattice point of k∇(Q,θ)."""

    coords: Flow
    degree: int = 1

    def as_dict(self, q: Quiver) -> Dict[str, int]:
        return dict(zip(q.arrow_ids, self.coords))


@dataclass(frozen=True)
class Circulation:
    """Integer vector on arrows with zero net flow at every vertex."""

    coords: Flow

    def as_dict(self, q: Quiver) -> Dict[str, int]:
        return {a: c for a, c in zip(q.arrow_ids, self.coords) if c}


@dataclass(frozen=True)
class Cell:
    """Nonempty cell ∇_k̲ = ∇ ∩ [k̲, k̲+1]."""

    lower: Flow
    points: Tuple[Flow, ...]


@dataclass(frozen=True)
class CenteringStep:
    triple: str  # "m" or "n"
    pair: Tuple[int, int]
    cycle: Flow
    before: Tuple[Flow, Flow]
    after: Tuple[Flow, Flow]
    distance_before: int
    distance_after: int


@dataclass
class CenteringResult:
    lower: Flow
    m: Tuple[Flow, Flow, Flow]
    n: Tuple[Flow, Flow, Flow]
    trace: List[CenteringStep] = field(default_factory=list)


def flow_supply(q: Quiver, theta: Mapping[str, int]) -> int:
    """Σ max(0, −θ(v)): an upper bound on every arrow of a flow in ∇(Q,θ)."""
    return sum(max(0, -theta.get(v, 0)) for v in q.vertices)


def flow_system(q: Quiver, theta: Mapping[str, int], bounds: Optional[Sequence[int]] = None) -> ConstraintSystem:
    """Constraint system of ∇(Q,θ), or of the cell with lower corner ``bounds``.

    Without ``bounds`` every arrow is capped by :func:`flow_supply`, which holds
    on acyclic quivers for every point of the polytope.
    """
    order = topological_arrow_order(q)
    theta = full_weight(q, theta)
    rows = tuple(zip(q.incidence_rows(), (theta[v] for v in q.vertices)))
    if bounds is None:
        cap = flow_supply(q, theta)
        lower = (0,) * len(q.arrows)
        upper = (cap,) * len(q.arrows)
    else:
        if len(bounds) != len(q.arrows) or any(b < 0 for b in bounds):
            raise InputError("cell corner must be a nonnegative vector on the arrows")
        lower = tuple(bounds)
        upper = tuple(b + 1 for b in bounds)
    return ConstraintSystem(len(q.arrows), rows, lower, upper, order)


def enumerate_dilation(
    q: Quiver, theta: Mapping[str, int], k: int, bounds: Optional[Sequence[int]] = None
) -> List[FlowPoint]:
    """Lattice points of k∇(Q,θ) (intersected with k·[k̲, k̲+1] when bounds given)."""
    if k < 0:
        raise InputError("dilation factor must be nonnegative")
    theta = full_weight(q, theta)
    system = flow_system(q, theta, bounds)
    if not is_balanced(q, theta):
        logger.info("unbalanced weight, empty polytope")
        return []
    return [FlowPoint(x, k) for x in enumerate_points(system, k)]


def weight_of_point(q: Quiver, x: Sequence[int]) -> Weight:
    """θ_x(v) = Σ_{a⁺=v} x(a) − Σ_{a⁻=v} x(a)."""
    if len(x) != len(q.arrows):
        raise InputError("vector length differs from arrow count")
    theta = {v: 0 for v in q.vertices}
    for arrow, value in zip(q.arrows, x):
        theta[arrow.head] += value
        theta[arrow.tail] -= value
    return theta


def enumerate_nonempty_zero_cells(q: Quiver) -> List[Weight]:
    """Distinct weights θ_z over z ∈ {0,1}^{Q1}, in first-seen order."""
    if len(q.arrows) > config.ZERO_CELL_MAX_ARROWS:
        raise BudgetExceededError("zero-cell scan (arrows)", config.ZERO_CELL_MAX_ARROWS)
    seen = set()
    weights: List[Weight] = []
    for z in cartesian((0, 1), repeat=len(q.arrows)):
        theta = weight_of_point(q, z)
        key = tuple(theta[v] for v in q.vertices)
        if key not in seen:
            seen.add(key)
            weights.append(theta)
    return weights


def cell_of(q: Quiver, theta: Mapping[str, int], lower: Sequence[int]) -> List[FlowPoint]:
    """Lattice points of ∇(Q,θ) ∩ [k̲, k̲+1]; computed as the 0-cell for θ − θ_k̲ then shifted."""
    theta = full_weight(q, theta)
    shift = weight_of_point(q, lower)
    reduced = {v: theta[v] - shift[v] for v in q.vertices}
    zero = enumerate_dilation(q, reduced, 1, bounds=(0,) * len(q.arrows))
    return [FlowPoint(tuple(z + k for z, k in zip(p.coords, lower)), 1) for p in zero]


def enumerate_cells(
    q: Quiver, theta: Mapping[str, int], points: Optional[Sequence[Flow]] = None
) -> List[Cell]:
    """All distinct nonempty cells, identified by their lattice-point sets.

    Branches arrow by arrow on k̲(a) ∈ {x(a)−1, x(a)} over surviving points;
    when all survivors agree on an arrow only one corner value is kept, as
    both give the same lattice points.
    """
    if points is None:
        points = [p.coords for p in enumerate_dilation(q, theta, 1)]
    cells: Dict[Tuple[Flow, ...], Flow] = {}
    m = len(q.arrows)

    def branch(i: int, corner: List[int], alive: List[Flow]) -> None:
        if i == m:
            key = tuple(sorted(alive))
            cells.setdefault(key, tuple(corner))
            return
        values = sorted({x[i] for x in alive})
        if len(values) == 1:
            options = [max(values[0] - 1, 0)]
        else:
            options = sorted({c for v in values for c in (v - 1, v) if c >= 0})
        for c in options:
            survivors = [x for x in alive if c <= x[i] <= c + 1]
            if survivors:
                corner.append(c)
                branch(i + 1, corner, survivors)
                corner.pop()

    if points:
        branch(0, [], list(points))
    result = [Cell(lower, key) for key, lower in cells.items()]
    result.sort(key=lambda c: (-len(c.points), c.lower))
    return result


def is_circulation(q: Quiver, c: Sequence[int]) -> bool:
    return all(w == 0 for w in weight_of_point(q, c).values())


def alternating_cycle_decompose(q: Quiver, c: Circulation) -> List[Circulation]:
    """Greedy sign-compatible decomposition into primitive cycles.

    Arrows with c(a) > 0 are walked forward, c(a) < 0 backward. Conservation
    makes every vertex reached with positive residual leave again, so the walk
    closes into a simple oriented cycle, which is subtracted.
    """
    if not is_circulation(q, c.coords):
        raise NotACirculationError("vector is not a circulation")
    residual = list(c.coords)
    cycles: List[Circulation] = []
    while any(residual):
        start = next(i for i, r in enumerate(residual) if r)
        path: List[int] = []
        seen: Dict[str, int] = {}

        def oriented(i: int) -> Tuple[str, str]:
            arrow = q.arrows[i]
            return (arrow.tail, arrow.head) if residual[i] > 0 else (arrow.head, arrow.tail)

        origin, here = oriented(start)
        seen[origin] = 0
        path.append(start)
        while here not in seen:
            seen[here] = len(path)
            step = next(
                i for i, r in enumerate(residual) if r and i not in path and oriented(i)[0] == here
            )
            path.append(step)
            here = oriented(step)[1]
        loop = path[seen[here]:]
        cycle = [0] * len(residual)
        for i in loop:
            cycle[i] = 1 if residual[i] > 0 else -1
        for i in loop:
            residual[i] -= cycle[i]
        cycles.append(Circulation(tuple(cycle)))
    return cycles


def _distance(x: Flow, lower: Flow) -> int:
    total = 0
    for value, k in zip(x, lower):
        if value < k:
            total += k - value
        elif value > k + 1:
            total += value - k - 1
    return total


def center_triple(
    q: Quiver,
    theta: Mapping[str, int],
    ms: Sequence[Sequence[int]],
    ns: Sequence[Sequence[int]],
) -> CenteringResult:
    """Move two factorizations of the same degree-3 element into one cell.

    k̲ = ⌊(m₁+m₂+m₃)/3⌋. Each exchange m_i, m_j -> m_i ± c, m_j ∓ c along an
    alternating cycle of m_j − m_i is a quadratic relation and strictly lowers
    the distance of the triple to the box [k̲, k̲+1].
    """
    theta = full_weight(q, theta)
    if len(ms) != 3 or len(ns) != 3:
        raise InputError("centering needs two triples")
    for x in list(ms) + list(ns):
        if len(x) != len(q.arrows) or any(v < 0 for v in x) or weight_of_point(q, x) != theta:
            raise InputError("triple entries must be lattice points of the quiver polytope")
    total = tuple(sum(col) for col in zip(*ms))
    if total != tuple(sum(col) for col in zip(*ns)):
        raise InputError("the two triples have different sums")
    lower = tuple(v // 3 for v in total)
    result = CenteringResult(lower, tuple(tuple(x) for x in ms), tuple(tuple(x) for x in ns))  # type: ignore[arg-type]

    for label in ("m", "n"):
        triple = [tuple(x) for x in (ms if label == "m" else ns)]
        while True:
            found = None
            for i, x in enumerate(triple):
                for a, k in enumerate(lower):
                    if x[a] < k or x[a] > k + 1:
                        found = (i, a)
                        break
                if found:
                    break
            if found is None:
                break
            i, a = found
            below = triple[i][a] < lower[a]
            j = next(
                j for j in range(3)
                if j != i and (triple[j][a] >= lower[a] + 1 if below else triple[j][a] <= lower[a])
            )
            # receiver gains c, donor loses c
            receiver, donor = (i, j) if below else (j, i)
            diff = Circulation(tuple(u - v for u, v in zip(triple[donor], triple[receiver])))
            cycle = next(c for c in alternating_cycle_decompose(q, diff) if c.coords[a] == 1)
            before = (triple[i], triple[j])
            d_before = sum(_distance(x, lower) for x in triple)
            triple[receiver] = tuple(u + v for u, v in zip(triple[receiver], cycle.coords))
            triple[donor] = tuple(u - v for u, v in zip(triple[donor], cycle.coords))
            d_after = sum(_distance(x, lower) for x in triple)
            if d_after >= d_before:
                raise VerificationError("centering step did not reduce the distance")
            result.trace.append(
                CenteringStep(label, (i, j), cycle.coords, before, (triple[i], triple[j]), d_before, d_after)
            )
        if label == "m":
            result.m = tuple(triple)  # type: ignore[assignment]
        else:
            result.n = tuple(triple)  # type: ignore[assignment]
    logger.debug("centered triples in %d exchanges", len(result.trace))
    return result
