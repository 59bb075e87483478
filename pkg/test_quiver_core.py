"""
Tests for quiver construction, weights, star subdivision and reductions.

Run with pytest or directly: python test_quiver_core.py
"""
import networkx as nx
import pytest

from quiver_cells.catalog import case_i, get_catalog, k4_graph, k33hub
from quiver_cells.errors import (
    InputError,
    NotAcyclicError,
    PatternNotFoundError,
    UnbalancedWeightError,
)
from quiver_cells.polytope import LatticePolytope, product_decomposition_check
from quiver_cells.quiver import (
    Arrow,
    Quiver,
    chi,
    component_totals,
    contract_reducible_sink,
    full_weight,
    is_balanced,
    prime_decompose,
    quiver_from_json,
    quiver_to_json,
    remove_arrow,
    star_subdivision,
    strip_fixed_sinks,
    topological_arrow_order,
    validate_acyclic,
)


def double_chain():
    """v1 ⇉ v2 ⇉ v3: two Kronecker blocks glued at v2."""
    q = Quiver.from_edges(
        ("v1", "v2", "v3"),
        [("a1", "v1", "v2"), ("b1", "v1", "v2"), ("a2", "v2", "v3"), ("b2", "v2", "v3")],
        acyclic=True,
    )
    return q, {"v1": -1, "v2": 0, "v3": 1}


def test_oriented_cycle_detected():
    cyclic = Quiver.from_edges(("x", "y"), [("p", "x", "y"), ("q", "y", "x")])
    assert not validate_acyclic(cyclic)
    with pytest.raises(NotAcyclicError):
        Quiver.from_edges(("x", "y"), [("p", "x", "y"), ("q", "y", "x")], acyclic=True)


def test_loop_counts_as_cycle():
    looped = Quiver.from_edges(("x",), [("l", "x", "x")])
    assert not validate_acyclic(looped)


def test_duplicate_and_unknown_ids_rejected():
    with pytest.raises(InputError):
        Quiver(("x", "x"), ())
    with pytest.raises(InputError):
        Quiver(("x",), (Arrow("a", "x", "nowhere"),))
    with pytest.raises(InputError):
        full_weight(Quiver(("x",), ()), {"y": 1})


def test_star_subdivision_of_k4():
    q = star_subdivision(k4_graph())
    assert len(q.vertices) == 10
    assert len(q.arrows) == 12
    sinks = [v for v in q.vertices if v.startswith("s")]
    assert all(len(q.in_arrows(s)) == 2 and not q.out_arrows(s) for s in sinks)


def test_star_subdivision_rejects_loops():
    g = nx.Graph()
    g.add_edge("a", "a")
    with pytest.raises(InputError):
        star_subdivision(g)


def test_chi_is_dimension_bound():
    entry = k33hub()
    assert chi(entry.quiver) == 9
    entry = get_catalog("y3star(I)")
    assert chi(entry.quiver) == 4


def test_balance_per_component():
    q = Quiver.from_edges(("a", "b", "c", "d"), [("x", "a", "b"), ("y", "c", "d")], acyclic=True)
    assert is_balanced(q, {"a": -1, "b": 1, "c": -2, "d": 2})
    theta = {"a": -1, "b": 2, "c": -1, "d": 0}
    assert not is_balanced(q, theta)
    assert component_totals(q, theta) == {"a": 1, "c": -1}


def test_topological_arrow_order_follows_tails():
    entry = get_catalog("chain(2)")
    q = entry.quiver
    order = [q.arrows[i].id for i in topological_arrow_order(q)]
    # a3 is the only source, then a2
    assert order[:3] == ["t2", "b2", "w"]
    assert order[3:] == ["t1", "b1"]


def test_prime_decompose_balances_cut_vertex():
    q, theta = double_chain()
    decomposition = prime_decompose(q, theta)
    assert decomposition.cut_vertices == ("v2",)
    weights = [c.weight for c in decomposition.components]
    assert weights == [{"v1": -1, "v2": 1}, {"v2": -1, "v3": 1}]
    assert all(sum(w.values()) == 0 for w in weights)


def test_prime_decompose_rejects_unbalanced():
    q, _ = double_chain()
    with pytest.raises(UnbalancedWeightError):
        prime_decompose(q, {"v1": -1, "v2": 0, "v3": 2})


def test_polytope_is_product_of_blocks():
    q, theta = double_chain()
    assert product_decomposition_check(q, theta)
    assert len(LatticePolytope.from_quiver(q, theta).points) == 4


def test_contraction_reaches_reduced_case_i_quiver():
    entry = get_catalog("y3star(I)")
    q, theta = entry.quiver, entry.weight
    count = len(entry.polytope.points)
    assert count == 6
    for _ in range(6):
        q, theta = contract_reducible_sink(q, theta)
        assert len(LatticePolytope.from_quiver(q, theta).points) == count
    assert len(q.vertices) == 9
    assert len(q.arrows) == len(case_i().quiver.arrows) == 12
    assert sorted(theta.values()) == sorted(case_i().weight.values())
    with pytest.raises(PatternNotFoundError):
        contract_reducible_sink(q, theta)


def test_strip_fixed_sinks_forces_both_arrows():
    g = nx.Graph()
    g.add_edge("u", "v")
    q = star_subdivision(g)
    reduced, theta, forced = strip_fixed_sinks(q, {"u": -1, "v": -1, "s0": 2})
    assert reduced.vertices == ("u", "v")
    assert reduced.arrows == ()
    assert theta == {"u": 0, "v": 0}
    assert forced == {"u->s0": 1, "v->s0": 1}


def test_remove_arrow_unknown():
    q, _ = double_chain()
    assert len(remove_arrow(q, "a1").arrows) == 3
    with pytest.raises(InputError):
        remove_arrow(q, "zz")


def test_json_weight_forms():
    q, theta = double_chain()
    data = quiver_to_json(q, theta)
    assert data["weights"] == {"v1": -1, "v2": 0, "v3": 1}
    parsed, parsed_theta = quiver_from_json(data)
    assert parsed.arrow_ids == q.arrow_ids
    assert parsed_theta == theta
    data["weights"] = [-1, 0, 1]
    assert quiver_from_json(data)[1] == theta
    data["weights"] = [-1, 1]
    with pytest.raises(InputError):
        quiver_from_json(data)
    with pytest.raises(InputError):
        quiver_from_json({"arrows": []})


def test_json_weights_optional_with_theta_alias():
    q, theta = double_chain()
    data = quiver_to_json(q)
    assert "weights" not in data
    assert quiver_from_json(data)[1] is None
    data["theta"] = {"v1": -1, "v3": 1}
    assert quiver_from_json(data)[1] == theta
    data["weights"] = {"v1": -1, "zz": 1}
    with pytest.raises(InputError):
        quiver_from_json(data)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
