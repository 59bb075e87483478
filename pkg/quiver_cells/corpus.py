"""Seeded random quivers, weights and cells for property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from quiver_cells import config
from quiver_cells.errors import BudgetExceededError
from quiver_cells.flows import weight_of_point
from quiver_cells.polytope import LatticePolytope
from quiver_cells.quiver import Arrow, Quiver, Weight


@dataclass(frozen=True)
class Sample:
    quiver: Quiver
    weight: Weight
    witness: Tuple[int, ...]


def random_acyclic_quiver(rng: random.Random, max_vertices: int = 5, max_arrows: int = 8) -> Quiver:
    """Arrows always go from a lower to a higher position of a shuffled vertex list."""
    n = rng.randint(2, max_vertices)
    vertices = [f"q{i}" for i in range(n)]
    order = vertices[:]
    rng.shuffle(order)
    m = rng.randint(1, max_arrows)
    arrows = []
    for k in range(m):
        i, j = sorted(rng.sample(range(n), 2))
        arrows.append(Arrow(f"e{k}", order[i], order[j]))
    return Quiver(tuple(vertices), tuple(arrows), acyclic=True)


def random_sample(rng: random.Random, max_vertices: int = 5, max_arrows: int = 8, max_entry: int = 1) -> Sample:
    """Quiver with θ = θ_x for a random x ≥ 0, so ∇(Q,θ) contains x."""
    q = random_acyclic_quiver(rng, max_vertices, max_arrows)
    x = tuple(rng.randint(0, max_entry) for _ in q.arrows)
    return Sample(q, weight_of_point(q, x), x)


def iter_polytopes(
    count: Optional[int] = None,
    seed: Optional[int] = None,
    max_points: int = 30,
    **kwargs,
) -> Iterator[Tuple[Sample, LatticePolytope]]:
    """``count`` samples whose polytopes have at most ``max_points`` lattice points."""
    rng = random.Random(config.SEED if seed is None else seed)
    wanted = config.CORPUS_SIZE if count is None else count
    produced = 0
    attempts = 0
    while produced < wanted and attempts < 20 * wanted:
        attempts += 1
        sample = random_sample(rng, **kwargs)
        try:
            p = LatticePolytope.from_quiver(sample.quiver, sample.weight, label=f"sample{attempts}")
        except BudgetExceededError:
            continue
        if len(p.points) > max_points:
            continue
        produced += 1
        yield sample, p


def random_cell(rng: random.Random, sample: Sample) -> LatticePolytope:
    """The cell around a random lattice point shifted down by 0 or 1 per arrow."""
    lower = tuple(max(0, v - rng.randint(0, 1)) for v in sample.witness)
    return LatticePolytope.from_quiver(sample.quiver, sample.weight, bounds=lower, label="cell")


def sample_list(count: int, seed: int, **kwargs) -> List[Tuple[Sample, LatticePolytope]]:
    return list(iter_polytopes(count, seed, **kwargs))
