"""
Tests for the semigroup, the ~_s classes and the generation degree.

Run with pytest or directly: python test_ideal_analysis.py
"""
import pytest

from quiver_cells.catalog import (
    birkhoff,
    case_i,
    chain,
    k33hub,
    kronecker,
    permutation_point,
    pn,
    pn_vertex_points,
)
from quiver_cells.ideal import (
    QUIVER_LICENSE,
    RelationWitness,
    SemigroupElement,
    check_witness,
    compare_cell_and_ambient_classes,
    divides,
    factorize,
    generation_degree,
    normality_spot_check,
    product_generation_check,
    semigroup_degree,
    sim_s_classes,
    witness_binomial,
)
from quiver_cells.errors import VerificationError
from quiver_cells.polytope import LatticePolytope

EVEN = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
ODD = [(1, 3, 2), (2, 1, 3), (3, 2, 1)]


def test_semigroup_degrees_of_segment():
    p = kronecker(1).polytope
    assert [len(semigroup_degree(p, k)) for k in range(4)] == [1, 2, 3, 4]


def test_divides():
    p = kronecker(2).polytope
    s = SemigroupElement((2, 2), 2)
    assert divides(p, (0, 2), s)
    assert divides(p, (1, 1), s)
    assert not divides(p, (0, 1), s)
    assert divides(p, (1, 1), SemigroupElement((1, 1), 1))
    assert not divides(p, (1, 1), SemigroupElement((0, 0), 0))


def test_birkhoff_cubic_relation_classes():
    p = birkhoff(3).polytope
    s = SemigroupElement((1,) * 9, 3)
    classes = sim_s_classes(p, s)
    as_points = sorted(sorted(p.points[i] for i in c) for c in classes)
    assert as_points == sorted([
        sorted(permutation_point(3, e) for e in EVEN),
        sorted(permutation_point(3, o) for o in ODD),
    ])


def test_birkhoff_generation_degree_three():
    report = generation_degree(birkhoff(3).polytope, max_degree=6)
    assert report.generation_degree == 3
    assert report.conclusive
    assert report.licensed_by == QUIVER_LICENSE
    assert report.multi_class_counts == {2: 0, 3: 1}
    (witness,) = report.witnesses
    assert witness.degree == 3
    sides = {witness.left, witness.right}
    assert sides == {
        tuple(sorted(permutation_point(3, e) for e in EVEN)),
        tuple(sorted(permutation_point(3, o) for o in ODD)),
    }


def test_segments():
    assert generation_degree(kronecker(1).polytope).generation_degree == 0
    report = generation_degree(kronecker(2).polytope)
    assert report.generation_degree == 2
    witness = report.witnesses[0]
    assert sorted([witness.left, witness.right]) == [((0, 2), (2, 0)), ((1, 1), (1, 1))]


def test_single_point_is_degenerate():
    entry = kronecker(1)
    p = LatticePolytope.from_quiver(entry.quiver, entry.weight, bounds=(1, 0))
    assert len(p.points) == 1
    report = generation_degree(p)
    assert report.generation_degree == 0
    assert report.conclusive


def test_square_is_not_quiver_licensed():
    report = generation_degree(pn(2).polytope, max_degree=4)
    assert report.generation_degree == 2
    assert not report.conclusive
    assert report.licensed_by is None
    assert report.multi_class_counts[4] == 0


def test_pn_three_cubic_witness():
    p = pn(3).polytope
    points = pn_vertex_points(3)
    assert all(x in p.point_index for x in points.values())
    report = generation_degree(p, max_degree=4)
    assert report.generation_degree == 3
    s = SemigroupElement((1,) * 9, 3)
    witness = witness_binomial(p, s)
    rows = tuple(sorted(points[v] for v in ("v1", "v2", "v3")))
    columns = tuple(sorted(points[w] for w in ("w1", "w2", "w3")))
    assert {witness.left, witness.right} == {rows, columns}


def rows_and_columns(n):
    points = pn_vertex_points(n)
    rows = tuple(sorted(points[f"v{i}"] for i in range(1, n + 1)))
    columns = tuple(sorted(points[f"w{j}"] for j in range(1, n + 1)))
    return rows, columns


@pytest.mark.parametrize("n", [2, 4])
def test_pn_witness_in_degree_n(n):
    p = pn(n).polytope
    assert p.is_compressed
    assert sorted(p.points) == sorted(pn_vertex_points(n).values())
    assert p.vertex_indices == tuple(range(2 * n))
    s = SemigroupElement((1,) * (n * n), n)
    classes = sim_s_classes(p, s)
    assert sorted(len(c) for c in classes) == [n, n]
    witness = witness_binomial(p, s)
    assert witness.degree == n
    assert {witness.left, witness.right} == set(rows_and_columns(n))
    report = generation_degree(p, max_degree=max(n, 3))
    assert report.generation_degree == n
    assert not report.conclusive


def test_case_i_is_quadratic():
    report = generation_degree(case_i().polytope)
    assert report.generation_degree == 2
    assert report.conclusive


def test_chain_is_quadratic():
    assert generation_degree(chain(2).polytope).generation_degree == 2
    assert generation_degree(chain(3).polytope).generation_degree == 2


def test_k33hub_holds_the_birkhoff_relation():
    p = k33hub().polytope
    q = p.quiver
    even_sum = [0] * len(q.arrows)
    for sigma in EVEN:
        for i, j in enumerate(sigma, 1):
            even_sum[q.arrow_index[f"a{i}{j}"]] += 1
    s = SemigroupElement(tuple(even_sum), 3)
    assert len(sim_s_classes(p, s)) == 2
    witness = witness_binomial(p, s)
    assert witness.left != witness.right


def test_factorize_and_normality():
    p = chain(3).polytope
    for s in semigroup_degree(p, 3):
        factors = factorize(p, s)
        assert len(factors) == 3
        assert tuple(map(sum, zip(*factors))) == s.point
    assert normality_spot_check(p, 3)


def test_witness_needs_two_classes():
    p = kronecker(2).polytope
    assert witness_binomial(p, SemigroupElement((1, 3), 2)) is None
    witness = witness_binomial(p, SemigroupElement((2, 2), 2))
    assert {witness.left, witness.right} == {((0, 2), (2, 0)), ((1, 1), (1, 1))}


def test_malformed_witnesses_are_rejected():
    p = kronecker(2).polytope
    s = SemigroupElement((2, 2), 2)
    with pytest.raises(VerificationError):
        RelationWitness(s, ((0, 2), (2, 0)), ((1, 1),))
    with pytest.raises(VerificationError):
        RelationWitness(s, ((0, 2), (1, 1)), ((1, 1), (1, 1)))
    with pytest.raises(VerificationError):
        RelationWitness(s, ((0, 2), (2, 0)), ((0, 2), (2, 0)))
    # well formed, but (4, 4) has a single ~_s class
    same_class = RelationWitness(SemigroupElement((4, 4), 4), ((0, 2), (0, 2), (2, 0), (2, 0)), ((1, 1),) * 4)
    with pytest.raises(VerificationError):
        check_witness(p, same_class)
    check_witness(p, witness_binomial(p, s))


def test_product_of_quadratic_factors_is_quadratic():
    check = product_generation_check(kronecker(1).polytope, kronecker(2).polytope)
    assert (check.degree_first, check.degree_second, check.degree_product) == (0, 2, 2)
    assert check.holds


def test_cell_classes_differ_from_ambient():
    entry = kronecker(2)
    ambient = entry.polytope
    cell = LatticePolytope.from_quiver(entry.quiver, entry.weight, bounds=(0, 1))
    comparison = compare_cell_and_ambient_classes(cell, ambient, SemigroupElement((2, 2), 2))
    assert comparison.cell_classes == [[(1, 1)]]
    assert sorted(comparison.ambient_classes) == [[(0, 2), (2, 0)], [(1, 1)]]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
