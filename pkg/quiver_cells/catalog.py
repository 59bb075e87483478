"""Named quivers and polytopes used as fixtures, examples and CLI inputs.

Names parse as ``name``, ``name(args)`` or ``catalog:name(args)``:
birkhoff(n), pn(n), kronecker(d), chain(k), k33hub, caseI, k4star,
y3star(I|II|III), k33star(I|II).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from quiver_cells import config
from quiver_cells.errors import InputError
from quiver_cells.polytope import LatticePolytope
from quiver_cells.quiver import Arrow, Quiver, Weight, star_subdivision


@dataclass
class CatalogEntry:
    name: str
    quiver: Optional[Quiver] = None
    weight: Optional[Weight] = None
    cube_slice: Optional[Tuple[int, List[Tuple[Tuple[int, ...], int]]]] = field(default=None, repr=False)

    @cached_property
    def polytope(self) -> LatticePolytope:
        if self.quiver is not None:
            if self.weight is None:
                raise InputError(f"quiver {self.name!r} has no weights; its polytope is undefined")
            return LatticePolytope.from_quiver(self.quiver, self.weight, label=self.name)
        dim, equalities = self.cube_slice  # type: ignore[misc]
        return LatticePolytope.from_cube_slice(dim, equalities, label=self.name)


def _check_size(name: str, n: int, low: int = 1, high: Optional[int] = None) -> None:
    high = config.CATALOG_MAX_N if high is None else high
    if not low <= n <= high:
        raise InputError(f"{name} parameter must lie in [{low}, {high}], got {n}")


def birkhoff(n: int) -> CatalogEntry:
    """Directed K_{n,n}, sources −1 and sinks +1: ∇ is the Birkhoff polytope B_n."""
    _check_size("birkhoff", n)
    rows = [f"r{i}" for i in range(1, n + 1)]
    cols = [f"c{j}" for j in range(1, n + 1)]
    arrows = [Arrow(f"a{i}{j}", f"r{i}", f"c{j}") for i in range(1, n + 1) for j in range(1, n + 1)]
    theta = {**{r: -1 for r in rows}, **{c: 1 for c in cols}}
    return CatalogEntry(f"birkhoff({n})", Quiver(tuple(rows + cols), tuple(arrows), acyclic=True), theta)


def permutation_point(n: int, sigma: Tuple[int, ...]) -> Tuple[int, ...]:
    """Flow of the permutation matrix σ in :func:`birkhoff` arrow order (σ is 1-based)."""
    return tuple(1 if sigma[i] == j + 1 else 0 for i in range(n) for j in range(n))


def pn(n: int) -> CatalogEntry:
    """P_n ⊂ R^{n²}: x ∈ [0,1] with Σ_{e∈P} x_e = 1 for every perfect matching P of K_{n,n}."""
    _check_size("pn", n, 2)
    dim = n * n
    equalities = []
    for sigma in permutations(range(n)):
        row = [0] * dim
        for i, j in enumerate(sigma):
            row[i * n + j] = 1
        equalities.append((tuple(row), 1))
    return CatalogEntry(f"pn({n})", cube_slice=(dim, equalities))


def pn_vertex_points(n: int) -> Dict[str, Tuple[int, ...]]:
    """m_v (all edges at v) for every vertex v of K_{n,n}: rows v1..vn, columns w1..wn."""
    points = {}
    for i in range(n):
        points[f"v{i + 1}"] = tuple(1 if r == i else 0 for r in range(n) for _ in range(n))
    for j in range(n):
        points[f"w{j + 1}"] = tuple(1 if c == j else 0 for _ in range(n) for c in range(n))
    return points


def kronecker(d: int) -> CatalogEntry:
    """Two parallel arrows v1 → v2 with θ = (−d, d): a segment of length d."""
    _check_size("kronecker", d, 1, 50)
    q = Quiver(("v1", "v2"), (Arrow("a", "v1", "v2"), Arrow("b", "v1", "v2")), acyclic=True)
    return CatalogEntry(f"kronecker({d})", q, {"v1": -d, "v2": d})


def chain(k: int) -> CatalogEntry:
    """k double arrows a_{i+1} → a_i plus one arrow a_{k+1} → a_1; unit flow from a_{k+1} to a_1."""
    _check_size("chain", k, 1, 6)
    vertices = tuple(f"a{i}" for i in range(1, k + 2))
    arrows = []
    for i in range(1, k + 1):
        arrows.append(Arrow(f"t{i}", f"a{i + 1}", f"a{i}"))
        arrows.append(Arrow(f"b{i}", f"a{i + 1}", f"a{i}"))
    arrows.append(Arrow("w", f"a{k + 1}", "a1"))
    theta = {v: 0 for v in vertices}
    theta["a1"] = 1
    theta[f"a{k + 1}"] = -1
    return CatalogEntry(f"chain({k})", Quiver(vertices, tuple(arrows), acyclic=True), theta)


def k33hub() -> CatalogEntry:
    """K_{3,3} plus a hub w fed by every source and feeding every sink."""
    sources = [f"v{i}" for i in range(1, 4)]
    sinks = [f"u{j}" for j in range(1, 4)]
    arrows = [Arrow(f"a{i}{j}", f"v{i}", f"u{j}") for i in range(1, 4) for j in range(1, 4)]
    arrows += [Arrow(f"b{i}", f"v{i}", "w") for i in range(1, 4)]
    arrows += [Arrow(f"c{j}", "w", f"u{j}") for j in range(1, 4)]
    theta = {**{v: -1 for v in sources}, **{u: 1 for u in sinks}, "w": 0}
    return CatalogEntry("k33hub", Quiver(tuple(sources + sinks + ["w"]), tuple(arrows), acyclic=True), theta)


# Reduced quiver of the exceptional 4-dimensional cell. Arrow ids spell the
# flow on the arrow in the coordinates x, y, z, w of the free arrows.
CASE_I_FREE_ARROWS = ("x", "y", "z", "w")
CASE_I_POINTS = {
    "b1": (0, 1, 1, 1),
    "b2": (0, 1, 0, 0),
    "b3": (0, 1, 1, 0),
    "b4": (1, 1, 0, 0),
    "b5": (1, 1, 1, 0),
    "b6": (0, 0, 0, 1),
}


def case_i() -> CatalogEntry:
    vertices = ("p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9")
    edges = [
        ("x", "p1", "p9"),
        ("1-x", "p2", "p9"),
        ("y", "p5", "p8"),
        ("1-y", "p1", "p8"),
        ("z", "p4", "p7"),
        ("1-z", "p5", "p7"),
        ("w", "p6", "p2"),
        ("y-z", "p6", "p5"),
        ("y+w-1", "p3", "p4"),
        ("1+x-y", "p3", "p1"),
        ("1-x-w", "p3", "p2"),
        ("1-y+z-w", "p6", "p4"),
    ]
    theta = {"p1": 0, "p2": 0, "p3": -1, "p4": 0, "p5": -1, "p6": -1, "p7": 1, "p8": 1, "p9": 1}
    return CatalogEntry("caseI", Quiver.from_edges(vertices, edges, acyclic=True), theta)


def k4_graph() -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(["1", "2", "3", "4"])
    g.add_edges_from([("1", "2"), ("2", "3"), ("3", "4"), ("4", "1"), ("1", "3"), ("2", "4")])
    return g


def y3_graph() -> nx.Graph:
    """Triangular prism: triangles ABC and DEF matched A–E, C–D, B–F."""
    g = nx.Graph()
    g.add_nodes_from(["A", "B", "C", "D", "E", "F"])
    g.add_edges_from([("A", "B"), ("B", "C"), ("C", "A"), ("D", "E"), ("E", "F"), ("F", "D")])
    g.add_edges_from([("A", "E"), ("C", "D"), ("B", "F")])
    return g


def k33_graph() -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(["u1", "u2", "u3", "w1", "w2", "w3"])
    g.add_edges_from((f"u{i}", f"w{j}") for i in range(1, 4) for j in range(1, 4))
    return g


def builtin_graphs() -> Dict[str, nx.Graph]:
    return {"K4": k4_graph(), "Y3": y3_graph(), "K33": k33_graph()}


def star_weight(g: nx.Graph, minus_one: Tuple[str, ...]) -> Tuple[Quiver, Weight]:
    """G* with −1 on ``minus_one``, −2 on the other original vertices, +1 on every sink."""
    q = star_subdivision(g)
    original = {str(v) for v in g.nodes}
    theta = {v: ((-1 if v in minus_one else -2) if v in original else 1) for v in q.vertices}
    return q, theta


STAR_PLACEMENTS = {
    "k4star": ("K4", ("2", "3")),
    "y3star(I)": ("Y3", ("A", "C", "F")),
    "y3star(II)": ("Y3", ("A", "B", "C")),
    "y3star(III)": ("Y3", ("A", "C", "E")),
    "k33star(I)": ("K33", ("u1", "u2", "u3")),
    "k33star(II)": ("K33", ("u1", "u2", "w1")),
}


def star_entry(key: str) -> CatalogEntry:
    graph_name, minus_one = STAR_PLACEMENTS[key]
    q, theta = star_weight(builtin_graphs()[graph_name], minus_one)
    return CatalogEntry(key, q, theta)


_BUILDERS: Dict[str, Callable[..., CatalogEntry]] = {
    "birkhoff": birkhoff,
    "pn": pn,
    "kronecker": kronecker,
    "chain": chain,
    "k33hub": k33hub,
    "caseI": case_i,
}

_NAME = re.compile(r"^(?:catalog:)?(?P<name>[A-Za-z0-9_]+)(?:\((?P<args>[^)]*)\))?$")


def get_catalog(text: str) -> CatalogEntry:
    """Resolve a catalog name such as ``birkhoff(3)`` or ``catalog:y3star(I)``."""
    match = _NAME.match(text.strip())
    if not match:
        raise InputError(f"cannot parse catalog name {text!r}")
    name, args = match.group("name"), match.group("args")
    star_key = name if args is None else f"{name}({args.strip()})"
    if star_key in STAR_PLACEMENTS:
        return star_entry(star_key)
    builder = _BUILDERS.get(name)
    if builder is None:
        raise InputError(f"unknown catalog entry {name!r}")
    params = [a.strip() for a in args.split(",") if a.strip()] if args else []
    try:
        return builder(*(int(a) for a in params))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad parameters for {name!r}: {args!r}") from exc


def catalog_names() -> List[str]:
    return ["birkhoff(n)", "pn(n)", "kronecker(d)", "chain(k)", "k33hub", "caseI"] + list(STAR_PLACEMENTS)
