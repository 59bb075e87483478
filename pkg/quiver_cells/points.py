"""Lattice-point enumeration for {A x = k b, k l <= x <= k u} by branch and bound.

Every polytope in this package is an affine subspace cut by a box, so one
enumerator serves quiver polytopes, cells, cube slices and products. Bounds
are tightened by interval propagation through the equalities before each
branch; a node counter enforces the search budget.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from quiver_cells import config
from quiver_cells.errors import BudgetExceededError, InputError
from quiver_cells.logging_utils import get_logger

logger = get_logger(__name__)

Row = Tuple[Tuple[int, ...], int]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class ConstraintSystem:
    """Equalities ``coeffs . x == rhs`` plus per-coordinate bounds.

    ``order`` is the branching order of the variables.
    """

    dim: int
    equalities: Tuple[Row, ...]
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    order: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.lower) != self.dim or len(self.upper) != self.dim:
            raise InputError("bounds must have one entry per coordinate")
        for coeffs, _ in self.equalities:
            if len(coeffs) != self.dim:
                raise InputError("equality row has wrong length")
        if not self.order:
            object.__setattr__(self, "order", tuple(range(self.dim)))

    def scaled(self, k: int) -> "ConstraintSystem":
        """System describing the k-th dilation."""
        return ConstraintSystem(
            dim=self.dim,
            equalities=tuple((c, k * r) for c, r in self.equalities),
            lower=tuple(k * v for v in self.lower),
            upper=tuple(k * v for v in self.upper),
            order=self.order,
        )

    def contains(self, x: Sequence[int], k: int = 1) -> bool:
        """Membership of an integer vector in the k-th dilation."""
        for i in range(self.dim):
            if not k * self.lower[i] <= x[i] <= k * self.upper[i]:
                return False
        for coeffs, rhs in self.equalities:
            if sum(c * v for c, v in zip(coeffs, x) if c) != k * rhs:
                return False
        return True

    def tight_rows(self, x: Sequence[int]) -> List[Tuple[int, ...]]:
        """Equality rows plus unit vectors of coordinates sitting on a bound."""
        rows = [coeffs for coeffs, _ in self.equalities]
        for i in range(self.dim):
            if x[i] == self.lower[i] or x[i] == self.upper[i]:
                rows.append(tuple(1 if j == i else 0 for j in range(self.dim)))
        return rows

    def product(self, other: "ConstraintSystem") -> "ConstraintSystem":
        """Block-diagonal system of the Cartesian product."""
        zeros_right = (0,) * other.dim
        zeros_left = (0,) * self.dim
        return ConstraintSystem(
            dim=self.dim + other.dim,
            equalities=tuple((c + zeros_right, r) for c, r in self.equalities)
            + tuple((zeros_left + c, r) for c, r in other.equalities),
            lower=self.lower + other.lower,
            upper=self.upper + other.upper,
            order=self.order + tuple(self.dim + i for i in other.order),
        )


class _Search:
    def __init__(self, system: ConstraintSystem, budget: int) -> None:
        self.system = system
        self.budget = budget
        self.nodes = 0
        # sparse rows: list of (index, coeff)
        self.rows = [
            ([(i, c) for i, c in enumerate(coeffs) if c], rhs)
            for coeffs, rhs in system.equalities
        ]

    def propagate(self, lo: List[int], hi: List[int]) -> bool:
        if any(a > b for a, b in zip(lo, hi)):
            return False
        changed = True
        while changed:
            changed = False
            for terms, rhs in self.rows:
                min_sum = 0
                max_sum = 0
                for i, c in terms:
                    if c > 0:
                        min_sum += c * lo[i]
                        max_sum += c * hi[i]
                    else:
                        min_sum += c * hi[i]
                        max_sum += c * lo[i]
                if rhs < min_sum or rhs > max_sum:
                    return False
                for i, c in terms:
                    if c > 0:
                        rest_min = min_sum - c * lo[i]
                        rest_max = max_sum - c * hi[i]
                        new_lo = _ceil_div(rhs - rest_max, c)
                        new_hi = (rhs - rest_min) // c
                    else:
                        rest_min = min_sum - c * hi[i]
                        rest_max = max_sum - c * lo[i]
                        # c * x in [rhs - rest_max, rhs - rest_min], c < 0
                        new_lo = _ceil_div(rhs - rest_min, c)
                        new_hi = (rhs - rest_max) // c
                    if new_lo > lo[i]:
                        lo[i] = new_lo
                        changed = True
                    if new_hi < hi[i]:
                        hi[i] = new_hi
                        changed = True
                    if lo[i] > hi[i]:
                        return False
                    if changed:
                        # recompute sums on the next sweep
                        break
                if changed:
                    break
        return True

    def run(self, lo: List[int], hi: List[int]) -> Iterator[Tuple[int, ...]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError("lattice-point enumeration", self.budget)
        if not self.propagate(lo, hi):
            return
        for i in self.system.order:
            if lo[i] < hi[i]:
                for value in range(lo[i], hi[i] + 1):
                    child_lo = list(lo)
                    child_hi = list(hi)
                    child_lo[i] = child_hi[i] = value
                    yield from self.run(child_lo, child_hi)
                return
        yield tuple(lo)


def iter_points(
    system: ConstraintSystem, k: int = 1, budget: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """Yield the lattice points of the k-th dilation in lexicographic branching order."""
    scaled = system if k == 1 else system.scaled(k)
    search = _Search(scaled, budget or config.NODE_BUDGET)
    yield from search.run(list(scaled.lower), list(scaled.upper))


def enumerate_points(
    system: ConstraintSystem, k: int = 1, budget: Optional[int] = None
) -> List[Tuple[int, ...]]:
    """Sorted list of the lattice points of the k-th dilation."""
    points = sorted(iter_points(system, k, budget))
    logger.debug("enumerated %d points (k=%d, dim=%d)", len(points), k, system.dim)
    return points
