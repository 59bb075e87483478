"""
Tests for supports, singular adjacency and the quadratic Gröbner basis check.

Run with pytest or directly: python test_compressed.py
"""
from math import comb

import pytest

from quiver_cells.catalog import birkhoff, chain, k33hub, pn, pn_vertex_points
from quiver_cells.compressed import (
    GrobnerOrder,
    build_grobner_order,
    count_standard_monomials,
    divides_by_support,
    knn_support_lemma,
    neighbour_path,
    neighbours_by_support,
    no_adjacent_singular_implies_deg2,
    point_support,
    quadratic_binomials,
    semigroup_supports,
    singular_adjacency_check,
    support,
    verify_quadratic_gb,
)
from quiver_cells.errors import GrobnerOrderError
from quiver_cells.ideal import SemigroupElement, divides, semigroup_degree


def test_permutation_support_is_its_entries():
    p = birkhoff(3).polytope
    for i, x in enumerate(p.points):
        supp = point_support(p, i)
        assert len(supp) == 3
        assert supp == support(p, SemigroupElement(x, 1))


def test_supports_add_up():
    p = birkhoff(3).polytope
    a, b = p.points[0], p.points[5]
    s = SemigroupElement(tuple(x + y for x, y in zip(a, b)), 2)
    assert support(p, s) == point_support(p, 0) | point_support(p, 5)


def test_divisibility_by_support_matches_semigroup():
    p = birkhoff(3).polytope
    for s in semigroup_degree(p, 2):
        for m in p.points:
            assert divides_by_support(p, m, s) == divides(p, m, s)


def test_neighbours_by_support_match_geometry():
    for p in (birkhoff(3).polytope, chain(3).polytope):
        pairs = {
            (i, j)
            for i in range(len(p.points))
            for j in range(i + 1, len(p.points))
            if neighbours_by_support(p, i, j)
        }
        assert pairs == set(p.edge_data.neighbours)


def test_neighbour_path_inside_support():
    p = birkhoff(3).polytope
    s = SemigroupElement(tuple(x + y for x, y in zip(p.points[0], p.points[1])), 2)
    assert neighbour_path(p, s, 0, 1) == [0, 1]
    assert neighbour_path(p, s, 0, 2) is None


def test_birkhoff_singulars_are_adjacent():
    p = birkhoff(3).polytope
    adjacency = singular_adjacency_check(p)
    assert len(adjacency.singular) == 6
    assert len(adjacency.pairs) == 15
    check = no_adjacent_singular_implies_deg2(p)
    assert not check.precondition
    with pytest.raises(GrobnerOrderError):
        build_grobner_order(p)


def test_k33hub_has_adjacent_singular_vertices():
    p = k33hub().polytope
    assert p.is_compressed
    adjacency = singular_adjacency_check(p)
    assert not adjacency.none_adjacent
    assert not no_adjacent_singular_implies_deg2(p, 3).precondition


def test_chain_order_puts_singular_vertex_last():
    p = chain(2).polytope
    order = build_grobner_order(p)
    assert order.singular is not None
    assert order.vertex_rank[order.singular] == len(p.vertex_indices) - 1
    head = order.facet_order[: len(point_support(p, order.singular))]
    assert set(head) == point_support(p, order.singular)


@pytest.mark.parametrize("k, size", [(2, 1), (3, 9), (4, 55)])
def test_chain_quadratic_binomial_count(k, size):
    p = chain(k).polytope
    binomials = quadratic_binomials(p, build_grobner_order(p))
    assert len(binomials) == size
    for b in binomials:
        lead = [p.points[i] for i in b.leading]
        trail = [p.points[i] for i in b.trailing]
        assert tuple(map(sum, zip(*lead))) == tuple(map(sum, zip(*trail)))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_chain_gb_verified_to_degree_six(k):
    p = chain(k).polytope
    assert len(singular_adjacency_check(p).singular) == 1
    report = verify_quadratic_gb(p, max_degree=6)
    assert report.verified
    assert report.failed_degree is None
    assert report.verified_to_degree == 6
    assert report.standard_counts == report.lattice_counts
    assert report.lattice_counts[1] == 2 ** k + 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_chain_square_relations_come_in_k_choose_2_shapes(k):
    p = chain(k).polytope
    shapes = set()
    for b in quadratic_binomials(p, build_grobner_order(p)):
        u, v = (p.points[i] for i in b.leading)
        # top arrows t1..tk sit at the even positions
        differ = frozenset(i for i in range(k) if u[2 * i] != v[2 * i])
        if len(differ) == 2:
            shapes.add(differ)
    assert len(shapes) == comb(k, 2)


def test_chain_theorem_holds():
    for k in (2, 3):
        check = no_adjacent_singular_implies_deg2(chain(k).polytope)
        assert check.precondition
        assert check.holds


def test_standard_monomials_without_relations():
    order = GrobnerOrder((), {0: 0, 1: 1, 2: 2}, None)
    assert count_standard_monomials(order, [], 4) == comb(6, 4)
    assert count_standard_monomials(order, [(0, 2)], 2) == 5
    assert count_standard_monomials(order, [(1, 1)], 2) == 5


def test_pn_three_vertex_point_supports_sit_inside_degree_two_supports():
    p = pn(3).polytope
    assert p.is_compressed
    vertex_points = [p.point_index[x] for x in pn_vertex_points(3).values()]
    for s in semigroup_degree(p, 2):
        assert knn_support_lemma(p, vertex_points, s)
    assert len(semigroup_supports(p, 2)) == len(semigroup_degree(p, 2))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
