"""Quivers, weights and the structural operations on them.

A quiver is a finite directed multigraph with string vertex and arrow ids.
Weights are plain ``Dict[str, int]`` maps from vertex id to integer; the
flow convention throughout is θ(v) = inflow(v) − outflow(v).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from quiver_cells.errors import (
    InputError,
    NotAcyclicError,
    PatternNotFoundError,
    UnbalancedWeightError,
)
from quiver_cells.logging_utils import get_logger

logger = get_logger(__name__)

Weight = Dict[str, int]


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    """Immutable quiver. ``acyclic=True`` is verified at construction."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    acyclic: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise InputError("duplicate arrow ids")
        known = set(self.vertices)
        for arrow in self.arrows:
            if arrow.tail not in known or arrow.head not in known:
                raise InputError(f"arrow {arrow.id!r} references an unknown vertex")
        if self.acyclic and not validate_acyclic(self):
            raise NotAcyclicError("quiver flagged acyclic contains an oriented cycle")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str, str]], acyclic: bool = False) -> "Quiver":
        """Build from ``(id, tail, head)`` triples."""
        return cls(tuple(vertices), tuple(Arrow(*e) for e in edges), acyclic)

    @cached_property
    def vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> Dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    @property
    def arrow_ids(self) -> Tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def in_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.head == v]

    def out_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.tail == v]

    def to_digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            g.add_edge(arrow.tail, arrow.head, key=arrow.id)
        return g

    def to_graph(self) -> nx.MultiGraph:
        """Underlying undirected multigraph."""
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            g.add_edge(arrow.tail, arrow.head, key=arrow.id)
        return g

    def subquiver(self, arrow_ids: Iterable[str], vertices: Optional[Iterable[str]] = None) -> "Quiver":
        keep = set(arrow_ids)
        verts = tuple(vertices) if vertices is not None else self.vertices
        return Quiver(verts, tuple(a for a in self.arrows if a.id in keep))

    def incidence_rows(self) -> List[Tuple[int, ...]]:
        """Row per vertex: +1 on arrows into it, −1 on arrows out of it."""
        rows = []
        for v in self.vertices:
            row = []
            for arrow in self.arrows:
                entry = 0
                if arrow.head == v:
                    entry += 1
                if arrow.tail == v:
                    entry -= 1
                row.append(entry)
            rows.append(tuple(row))
        return rows


@dataclass(frozen=True)
class PrimeComponent:
    quiver: Quiver
    weight: Weight
    cut_vertices: Tuple[str, ...] = ()


@dataclass(frozen=True)
class PrimeDecomposition:
    components: Tuple[PrimeComponent, ...]
    cut_vertices: Tuple[str, ...] = field(default=())


def full_weight(q: Quiver, theta: Mapping[str, int]) -> Weight:
    """Weight on every vertex of ``q`` (missing entries are 0)."""
    unknown = set(theta) - set(q.vertices)
    if unknown:
        raise InputError(f"weight names unknown vertices: {sorted(unknown)}")
    return {v: int(theta.get(v, 0)) for v in q.vertices}


def validate_acyclic(q: Quiver) -> bool:
    """True iff ``q`` has no oriented cycle (loops count as cycles)."""
    return nx.is_directed_acyclic_graph(q.to_digraph())


def require_acyclic(q: Quiver) -> None:
    if not validate_acyclic(q):
        raise NotAcyclicError("quiver contains an oriented cycle")


def connected_components(q: Quiver) -> List[List[str]]:
    """Vertex sets of the connected components, in vertex order."""
    order = q.vertex_index
    comps = [sorted(c, key=order.__getitem__) for c in nx.connected_components(q.to_graph())]
    return sorted(comps, key=lambda c: order[c[0]])


def component_totals(q: Quiver, theta: Mapping[str, int]) -> Dict[str, int]:
    """Map from each component's first vertex to the weight sum on the component."""
    return {comp[0]: sum(theta.get(v, 0) for v in comp) for comp in connected_components(q)}


def is_balanced(q: Quiver, theta: Mapping[str, int]) -> bool:
    return all(total == 0 for total in component_totals(q, theta).values())


def chi(q: Quiver) -> int:
    """|Q1| − |Q0| + number of connected components."""
    return len(q.arrows) - len(q.vertices) + nx.number_connected_components(q.to_graph())


def topological_arrow_order(q: Quiver) -> Tuple[int, ...]:
    """Arrow indices sorted by the topological position of their tails."""
    require_acyclic(q)
    position = {v: i for i, v in enumerate(nx.lexicographical_topological_sort(q.to_digraph(), key=q.vertex_index.get))}
    return tuple(sorted(range(len(q.arrows)), key=lambda i: (position[q.arrows[i].tail], i)))


def star_subdivision(g: nx.Graph) -> Quiver:
    """G*: every edge becomes a sink with one arrow from each endpoint.

    Original vertices keep their names; the sink of the i-th edge (in
    ``g.edges`` order) is ``s{i}`` and its arrows are ``{u}->s{i}``.
    """
    vertices = [str(v) for v in g.nodes]
    arrows = []
    for i, edge in enumerate(g.edges):
        u, v = str(edge[0]), str(edge[1])
        if u == v:
            raise InputError(f"star subdivision needs a loopless graph (loop at {u})")
        sink = f"s{i}"
        vertices.append(sink)
        arrows.append(Arrow(f"{u}->{sink}", u, sink))
        arrows.append(Arrow(f"{v}->{sink}", v, sink))
    return Quiver(tuple(vertices), tuple(arrows), acyclic=True)


def prime_decompose(q: Quiver, theta: Mapping[str, int]) -> PrimeDecomposition:
    """Split into biconnected blocks with weights balanced block by block.

    Non-cut vertices keep their weight. The share of a cut vertex in a block is
    fixed leaf-inward on the block-cut tree: a block's share at its parent cut
    vertex is minus the sum of its other (already determined) weights.
    """
    theta = full_weight(q, theta)
    if not is_balanced(q, theta):
        raise UnbalancedWeightError("weight does not sum to zero on every component")
    simple = nx.Graph(q.to_graph())
    simple.remove_edges_from(nx.selfloop_edges(simple))
    blocks = [frozenset(b) for b in nx.biconnected_components(simple)]
    cuts = set(nx.articulation_points(simple))
    order = q.vertex_index
    blocks.sort(key=lambda b: min(order[v] for v in b))

    tree = nx.Graph()
    for i, block in enumerate(blocks):
        tree.add_node(("B", i))
        for c in block & cuts:
            tree.add_edge(("B", i), ("C", c))

    shares: Dict[int, Weight] = {i: {v: theta[v] for v in block if v not in cuts} for i, block in enumerate(blocks)}

    for root_component in nx.connected_components(tree):
        root = min((n for n in root_component if n[0] == "B"), key=lambda n: n[1])
        parent = {root: None}
        stack = [root]
        visit = []
        while stack:
            node = stack.pop()
            visit.append(node)
            for nbr in sorted(tree.neighbors(node), key=str):
                if nbr not in parent:
                    parent[nbr] = node
                    stack.append(nbr)
        for node in reversed(visit):
            kind, key = node
            if kind == "C":
                # all child blocks are done; the parent block takes the rest
                children = [n for n in tree.neighbors(node) if parent.get(n) == node]
                taken = sum(shares[b][key] for _, b in children)
                shares[parent[node][1]][key] = theta[key] - taken
            elif parent[node] is not None:
                cut = parent[node][1]
                shares[key][cut] = -sum(w for v, w in shares[key].items() if v != cut)
        root_block = root[1]
        if sum(shares[root_block].values()) != 0:
            raise UnbalancedWeightError("block weights do not balance")

    components = []
    for i, block in enumerate(blocks):
        verts = tuple(v for v in q.vertices if v in block)
        arrows = tuple(a for a in q.arrows if a.tail in block and a.head in block and a.tail != a.head)
        components.append(
            PrimeComponent(
                quiver=Quiver(verts, arrows),
                weight={v: shares[i][v] for v in verts},
                cut_vertices=tuple(v for v in verts if v in cuts),
            )
        )
    logger.debug("prime decomposition: %d blocks, %d cut vertices", len(components), len(cuts))
    return PrimeDecomposition(tuple(components), tuple(v for v in q.vertices if v in cuts))


def contract_reducible_sink(
    q: Quiver, theta: Mapping[str, int], sink: Optional[str] = None
) -> Tuple[Quiver, Weight]:
    """Contract a valency-2 sink v (θ(v)=1) fed by an arrow a from a −1 source.

    v, a and the other arrow b are replaced by one arrow c from a⁻ to b⁻, and
    θ'(b⁻) = θ(b⁻) + 1. The first match in vertex order is used unless
    ``sink`` names one.
    """
    theta = full_weight(q, theta)
    candidates = [sink] if sink is not None else list(q.vertices)
    for v in candidates:
        incoming = q.in_arrows(v)
        if theta[v] != 1 or len(incoming) != 2 or q.out_arrows(v):
            continue
        for a, b in (incoming, incoming[::-1]):
            source = a.tail
            if theta[source] != -1 or q.in_arrows(source) or b.tail == source:
                continue
            c = Arrow(f"{a.id}*{b.id}", source, b.tail)
            arrows = []
            for arrow in q.arrows:
                if arrow.id == a.id:
                    arrows.append(c)
                elif arrow.id != b.id:
                    arrows.append(arrow)
            new_theta = {u: w for u, w in theta.items() if u != v}
            new_theta[b.tail] += 1
            logger.debug("contracted sink %s via %s, %s", v, a.id, b.id)
            return Quiver(tuple(u for u in q.vertices if u != v), tuple(arrows), q.acyclic), new_theta
    raise PatternNotFoundError("no valency-2 sink of weight 1 next to a −1 source")


def strip_fixed_sinks(q: Quiver, theta: Mapping[str, int]) -> Tuple[Quiver, Weight, Dict[str, int]]:
    """Remove valency-2 sinks whose weight 0 or 2 fixes both incoming arrows.

    Only meaningful on the 0/1 box of a unit cell: θ=0 forces both arrows to
    0, θ=2 forces both to 1 (the tails then lose one unit each, so their
    weight rises by 1). Returns the reduced quiver, weight and the forced
    arrow values.
    """
    theta = full_weight(q, theta)
    forced: Dict[str, int] = {}
    drop_vertices = set()
    for v in q.vertices:
        incoming = q.in_arrows(v)
        if len(incoming) != 2 or q.out_arrows(v) or theta[v] not in (0, 2):
            continue
        value = theta[v] // 2
        for arrow in incoming:
            forced[arrow.id] = value
            theta[arrow.tail] += value
        drop_vertices.add(v)
    verts = tuple(v for v in q.vertices if v not in drop_vertices)
    arrows = tuple(a for a in q.arrows if a.id not in forced)
    return Quiver(verts, arrows, q.acyclic), {v: theta[v] for v in verts}, forced


def remove_arrow(q: Quiver, arrow_id: str) -> Quiver:
    if arrow_id not in q.arrow_index:
        raise InputError(f"unknown arrow {arrow_id!r}")
    return Quiver(q.vertices, tuple(a for a in q.arrows if a.id != arrow_id), q.acyclic)


def weight_sequence(q: Quiver, theta: Mapping[str, int]) -> List[int]:
    return [theta.get(v, 0) for v in q.vertices]


def quiver_to_json(q: Quiver, theta: Optional[Mapping[str, int]] = None) -> Dict[str, object]:
    data: Dict[str, object] = {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in q.arrows],
    }
    if theta is not None:
        data["weights"] = {v: int(theta.get(v, 0)) for v in q.vertices}
    return data


def quiver_from_json(data: Mapping[str, object]) -> Tuple[Quiver, Optional[Weight]]:
    """Parse ``{"vertices": [...], "arrows": [{id, tail, head}], "weights": {...}}``.

    Weights are optional (``None`` when absent); ``theta`` is read as an alias.
    A list of weights is taken in vertex order.
    """
    try:
        vertices: Sequence[str] = [str(v) for v in data["vertices"]]  # type: ignore[union-attr]
        arrows = [Arrow(str(a["id"]), str(a["tail"]), str(a["head"])) for a in data["arrows"]]  # type: ignore[index,union-attr]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quiver JSON: {exc}") from exc
    q = Quiver(tuple(vertices), tuple(arrows))
    raw_theta = data.get("weights", data.get("theta"))
    if raw_theta is None:
        return q, None
    try:
        if isinstance(raw_theta, list):
            if len(raw_theta) != len(vertices):
                raise InputError("weights list must have one entry per vertex")
            return q, {v: int(w) for v, w in zip(vertices, raw_theta)}
        return q, full_weight(q, {str(k): int(v) for k, v in raw_theta.items()})  # type: ignore[union-attr]
    except (AttributeError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed quiver weights: {exc}") from exc
