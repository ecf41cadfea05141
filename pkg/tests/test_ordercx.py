import pytest

from qshell import GLOBALS as g
from qshell.errors import BadIndex, NotPure, TooLarge
from qshell.gf import admissible_permutation, field_new, unit_vector
from qshell.ordercx import (
    SimplicialComplex,
    betti_formula,
    chain_ids,
    count_homology_facets_characterized,
    count_homology_facets_oracle,
    flag_count,
    interior_factor,
    interior_slot_count,
    is_simplicial_shelling,
    maximal_chains_sorted,
    non_matroid_witness,
    order_complex,
    restriction,
    sphere_formula,
    uniform_formula,
)
from qshell.qcomplex import from_facets, q_sphere, uniform
from qshell.qorder import cmp_l, sort_q
from qshell.vecspace import full_space, span

UNIFORM_CASES = [
    (2, 1, 2, 2),
    (2, 1, 3, 6),
    (2, 2, 3, 8),
    (2, 2, 4, 56),
    (2, 3, 4, 64),
    (3, 1, 2, 3),
    (3, 2, 3, 27),
]


def test_simplicial_complex_from_facets():
    sc = SimplicialComplex.from_facets([("a", "b"), ("b", "a"), ("a",), ("b", "c")])
    assert sc.vertices == ("a", "b", "c")
    assert sc.facets == ((0, 1), (1, 2))
    assert sc.dim == 1 and sc.is_pure
    assert sc.labels(sc.facets[1]) == ("b", "c")
    empty = SimplicialComplex.from_facets([])
    assert empty.facets == ((),)
    assert empty.dim == -1


def test_simplicial_shelling():
    triangle = SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])
    assert is_simplicial_shelling(triangle).ok
    disjoint = SimplicialComplex.from_facets([(0, 1), (2, 3)])
    result = is_simplicial_shelling(disjoint)
    assert not result.ok
    assert result.violation == (1, 2)
    with pytest.raises(NotPure):
        is_simplicial_shelling(SimplicialComplex.from_facets([(0, 1), (2,)]))
    with pytest.raises(BadIndex):
        is_simplicial_shelling(triangle, [(0, 1)])


def test_flag_count():
    assert flag_count(3, 2) == 21
    assert flag_count(2, 3) == 4
    assert flag_count(0, 5) == 1


def test_order_complex_of_a_plane(f2):
    c = uniform(f2, 2, 2)
    sc = order_complex(c, punctured=True)
    assert len(sc.vertices) == 4
    assert len(sc.facets) == 3
    full = order_complex(c, punctured=False)
    assert len(full.vertices) == 5
    assert full.vertices[0].is_zero()


def test_worked_example_order_complex(worked_example):
    sc = order_complex(worked_example, punctured=True)
    assert len(sc.vertices) == 64
    assert [v.dim for v in sc.vertices] == [1] * 15 + [2] * 35 + [3] * 14
    chains = maximal_chains_sorted(worked_example)
    assert len(chains) == 294
    assert chains[0][-1] == sort_q(worked_example.facets)[0]
    assert all(cmp_l(a, b) == -1 for a, b in zip(chains, chains[1:]))
    assert is_simplicial_shelling(sc, [chain_ids(sc, ch) for ch in chains]).ok


def test_restriction(f2):
    chains = maximal_chains_sorted(uniform(f2, 3, 2))
    first = restriction(1, chains)
    assert first.members == ()
    assert not first.is_full
    last = restriction(len(chains), chains)
    assert last.index == len(chains)
    with pytest.raises(BadIndex):
        restriction(0, chains)
    with pytest.raises(BadIndex):
        restriction(len(chains) + 1, chains)


@pytest.mark.parametrize("q,k,n,expected", UNIFORM_CASES)
def test_uniform_counts(q, k, n, expected):
    c = uniform(field_new(q), n, k)
    assert uniform_formula(q, k, n) == expected
    assert count_homology_facets_oracle(c) == expected
    assert count_homology_facets_characterized(c) == expected
    assert betti_formula(c).betti_rank == expected


@pytest.mark.parametrize("q,r,expected", [(2, 1, 2), (2, 2, 8), (3, 1, 3)])
def test_sphere_counts(q, r, expected):
    c = q_sphere(full_space(field_new(q), r + 1))
    assert sphere_formula(q, r) == expected
    assert count_homology_facets_oracle(c) == expected
    assert betti_formula(c).betti_rank == expected


def test_counts_do_not_depend_on_the_admissible_order():
    f4 = field_new(2, 2, (1, 1, 1))
    c = uniform(f4, 3, 2)
    order = admissible_permutation(f4)
    expected = uniform_formula(4, 2, 3)
    assert expected == 64
    assert count_homology_facets_oracle(c, order) == expected
    assert count_homology_facets_characterized(c, order) == expected
    assert betti_formula(c, order).betti_rank == expected


def test_worked_example_counts(worked_example):
    report = betti_formula(worked_example)
    assert report.t == 14
    assert report.s == 6
    assert report.x == (0, 0, 0, 1)
    assert report.interior_factor == 2
    assert report.r_sum == 28
    assert report.betti_rank == 56
    assert report.degree == 2
    assert count_homology_facets_oracle(worked_example) == 56
    assert count_homology_facets_characterized(worked_example) == 56


def test_interior_slots(f2):
    top = full_space(f2, 3)
    plane = span([unit_vector(f2, 3, 1), unit_vector(f2, 3, 2)], 3)
    assert interior_slot_count(top, plane) == interior_factor(3, 2) == 2
    line = span([unit_vector(f2, 3, 1)], 3)
    assert interior_slot_count(plane, line) == interior_factor(2, 2) == 1
    with pytest.raises(BadIndex):
        interior_slot_count(top, line)


def test_non_matroid_witness(worked_example, f2):
    witness = non_matroid_witness(worked_example)
    assert witness.lengths == [3, 2]
    assert witness.vertices[0].is_zero()
    assert [v.dim for v in witness.vertices] == [0, 1, 1, 2]
    assert witness.to_dict()["lengths"] == [3, 2]
    assert non_matroid_witness(uniform(f2, 3, 1)) is None


def test_nonpure_complexes_are_refused(f2):
    c = from_facets(f2, 3, [span([unit_vector(f2, 3, 1), unit_vector(f2, 3, 2)], 3), span([unit_vector(f2, 3, 3)], 3)])
    with pytest.raises(NotPure):
        maximal_chains_sorted(c)
    with pytest.raises(NotPure):
        betti_formula(c)
    sc = order_complex(c)
    assert len(sc.vertices) == 5


def test_order_complex_guard(f2, monkeypatch):
    monkeypatch.setattr(g, "MAX_SIMPLICES", 10)
    with pytest.raises(TooLarge):
        order_complex(uniform(f2, 3, 2))


@pytest.mark.parametrize("build", [
    lambda: q_sphere(full_space(field_new(2), 2)),
    lambda: q_sphere(full_space(field_new(2), 3)),
    lambda: q_sphere(full_space(field_new(3), 2)),
    lambda: uniform(field_new(2), 4, 2),
    lambda: uniform(field_new(3), 3, 2),
])
def test_chain_order_is_a_shelling(build):
    c = build()
    sc = order_complex(c)
    chains = maximal_chains_sorted(c)
    assert is_simplicial_shelling(sc, [chain_ids(sc, ch) for ch in chains]).ok


def test_restriction_sets_of_the_projective_line(f2):
    chains = maximal_chains_sorted(q_sphere(full_space(f2, 2)))
    assert [ch[0].rows for ch in chains] == [((0, 1),), ((1, 0),), ((1, 1),)]
    full = [j for j in range(1, len(chains) + 1) if restriction(j, chains).is_full]
    assert full == [2, 3]
    assert len(full) == sphere_formula(2, 1)


@pytest.mark.parametrize("q,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_characterized_count_matches_the_oracle_on_spheres(q, r):
    c = q_sphere(full_space(field_new(q), r + 1))
    expected = sphere_formula(q, r)
    assert count_homology_facets_characterized(c) == expected
    assert count_homology_facets_oracle(c) == expected


@pytest.mark.parametrize("p,n,k", [(2, 4, 3), (2, 4, 2), (3, 4, 3)])
def test_interior_slots_on_every_facet_and_hyperplane(p, n, k):
    from qshell.vecspace import enumerate_subspaces_of, gaussian_binomial

    c = uniform(field_new(p), n, k)
    pairs = 0
    for facet in c.facets:
        for u in enumerate_subspaces_of(facet, k - 1):
            assert interior_slot_count(facet, u) == interior_factor(k, p)
            pairs += 1
    assert pairs == len(c.facets) * gaussian_binomial(k, k - 1, p)


def test_from_facets_drops_faces_dominated_several_levels_down():
    sc = SimplicialComplex.from_facets([(0,), (0, 1, 2), (1, 2), (3, 4), (3,), (2, 1, 0)])
    assert sc.facets == ((0, 1, 2), (3, 4))
    assert sc.vertices == (0, 1, 2, 3, 4)
    assert not sc.is_pure
