import itertools
import random

import galois
import numpy as np
import pytest

from qshell.errors import AmbientMismatch, BadDimension, DimensionMismatch, EmptyDifference, FieldMismatch, ParseError, TooLarge
from qshell.gf import admissible_permutation, field_new, galois_field, unit_vector, vector
from qshell.vecspace import (
    contains,
    contains_vec,
    elements,
    enumerate_all_subspaces,
    enumerate_between,
    enumerate_grassmannian,
    enumerate_subspaces_of,
    format_facets_file,
    full_space,
    gaussian_binomial,
    intersect,
    matrix_rank,
    min_nonzero_vector,
    min_vector_of_difference,
    null_space,
    read_facets_text,
    rref,
    span,
    subspace,
    subspace_count,
    sum_,
    vector_key,
    zero_subspace,
)


def test_rref_and_rank(f2, f3):
    m, r = rref([(1, 1, 0), (1, 1, 0), (0, 1, 1)], f2)
    assert r == 2
    assert m == ((1, 0, 1), (0, 1, 1), (0, 0, 0))
    assert matrix_rank([(1, 2), (2, 1)], f3) == 1
    with pytest.raises(DimensionMismatch):
        rref([(1, 0), (1,)], f2)


def test_null_space(f2):
    basis = null_space([(1, 1, 0)], f2, 3)
    assert basis == [(1, 1, 0), (0, 0, 1)]


def test_span_is_canonical(f2):
    a = span([vector(f2, (1, 1, 0)), vector(f2, (0, 1, 0))], 3)
    b = span([vector(f2, (1, 0, 0)), vector(f2, (1, 1, 0)), vector(f2, (0, 0, 0))], 3)
    assert a == b
    assert a.rows == ((1, 0, 0), (0, 1, 0))
    assert span([], 3, f2) == zero_subspace(f2, 3)
    with pytest.raises(DimensionMismatch):
        span([], 3)
    with pytest.raises(DimensionMismatch):
        span([vector(f2, (1, 0))], 3)


def test_sum_and_intersection(f2):
    u = span([unit_vector(f2, 3, 1), unit_vector(f2, 3, 2)], 3)
    v = span([unit_vector(f2, 3, 2), unit_vector(f2, 3, 3)], 3)
    assert intersect(u, v) == span([unit_vector(f2, 3, 2)], 3)
    assert sum_(u, v) == full_space(f2, 3)
    assert intersect(u, zero_subspace(f2, 3)).is_zero()


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (3, 3)])
def test_dimension_formula(p, n):
    spaces = enumerate_all_subspaces(field_new(p), n)
    for u, v in itertools.product(spaces, repeat=2):
        assert sum_(u, v).dim + intersect(u, v).dim == u.dim + v.dim


def test_containment(f2):
    plane = span([unit_vector(f2, 3, 1), unit_vector(f2, 3, 2)], 3)
    line = span([vector(f2, (1, 1, 0))], 3)
    assert contains(plane, line)
    assert not contains(line, plane)
    assert contains_vec(plane, (1, 1, 0))
    assert not contains_vec(plane, vector(f2, (0, 0, 1)))
    with pytest.raises(AmbientMismatch):
        contains(plane, zero_subspace(f2, 4))


def test_elements(f2, f3):
    plane = span([unit_vector(f2, 3, 1), unit_vector(f2, 3, 2)], 3)
    assert sorted(elements(plane)) == [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)]
    u = subspace(f3, 3, [(1, 2, 0), (0, 0, 1)])
    assert len(set(elements(u))) == 9


@pytest.mark.parametrize("n,k,q,expected", [(3, 1, 2, 7), (4, 2, 2, 35), (3, 2, 3, 13), (4, 2, 3, 130), (2, 3, 2, 0)])
def test_gaussian_binomial(n, k, q, expected):
    assert gaussian_binomial(n, k, q) == expected


@pytest.mark.parametrize("q_fixture,n", [("f2", 4), ("f3", 3)])
def test_grassmannian_counts(request, q_fixture, n):
    spec = request.getfixturevalue(q_fixture)
    total = 0
    for k in range(n + 1):
        spaces = enumerate_grassmannian(spec, n, k)
        assert len(spaces) == gaussian_binomial(n, k, spec.q)
        assert len(set(spaces)) == len(spaces)
        assert all(u.dim == k for u in spaces)
        total += len(spaces)
    assert total == subspace_count(n, spec.q)


def test_grassmannian_guards(f2, monkeypatch):
    with pytest.raises(BadDimension):
        enumerate_grassmannian(f2, 3, 4)
    from qshell import GLOBALS as g
    monkeypatch.setattr(g, "MAX_AMBIENT_SIZE", 8)
    with pytest.raises(TooLarge):
        enumerate_grassmannian(f2, 4, 2)


def test_subspaces_of_and_between(f2):
    top = full_space(f2, 4)
    line = span([unit_vector(f2, 4, 4)], 4)
    planes_through = enumerate_between(line, top, 2)
    assert len(planes_through) == gaussian_binomial(3, 1, 2)
    assert all(contains(p, line) for p in planes_through)
    plane = span([unit_vector(f2, 4, 1), unit_vector(f2, 4, 2)], 4)
    assert len(enumerate_subspaces_of(plane, 1)) == 3


def test_min_nonzero_vector_matches_brute_force(f3):
    for u in enumerate_all_subspaces(f3, 3):
        if u.is_zero():
            continue
        brute = min(x for x in elements(u) if any(x))
        assert min_nonzero_vector(u) == brute


def test_min_nonzero_vector_ignores_admissible_order(f16):
    order = admissible_permutation(f16)
    for k in (1, 2):
        for u in enumerate_grassmannian(f16, 2, k):
            brute = min((x for x in elements(u) if any(x)), key=lambda x: vector_key(x, order))
            assert min_nonzero_vector(u) == brute


def test_min_vector_of_difference(f2):
    top = full_space(f2, 3)
    plane = span([unit_vector(f2, 3, 2), unit_vector(f2, 3, 3)], 3)
    assert min_vector_of_difference(top, plane) == (1, 0, 0)
    with pytest.raises(EmptyDifference):
        min_vector_of_difference(plane, top)
    with pytest.raises(EmptyDifference):
        min_nonzero_vector(zero_subspace(f2, 3))


def test_facet_text_round_trip(f2):
    facets = enumerate_grassmannian(f2, 3, 2)
    spec, n, parsed = read_facets_text(format_facets_file(f2, 3, facets))
    assert spec == f2 and n == 3
    assert parsed == facets


def test_facet_text_errors():
    with pytest.raises(ParseError):
        read_facets_text("")
    with pytest.raises(ParseError):
        read_facets_text("n=3\n1,0,0")
    with pytest.raises(ParseError):
        read_facets_text("q=gf(2) n=3\n1,0")
    with pytest.raises(ParseError):
        read_facets_text("q=gf(2) n=3\n1,2,0")


def test_f2_elimination_matches_galois(f2):
    rng = random.Random(7)
    GF2 = galois.GF(2)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 6)
        m = [[rng.randint(0, 1) for _ in range(ncols)] for _ in range(nrows)]
        reduced, rank = rref(m, f2)
        expected = GF2(np.array(m)).row_reduce()
        assert [list(r) for r in reduced] == expected.tolist()
        assert rank == int(np.linalg.matrix_rank(GF2(np.array(m))))


def test_rref_over_an_extension_field(f16):
    m = [(1, 2, 3), (2, 4, 6), (0, 1, 7)]
    reduced, rank = rref(m, f16)
    GF = galois_field(f16)
    assert rank == 2
    assert [list(r) for r in reduced] == GF(np.array(m)).row_reduce().tolist()


def test_null_space_over_odd_and_extension_fields(f3, f16):
    for spec, m in ((f3, [(1, 2, 0), (0, 1, 1)]), (f16, [(1, 2, 3), (4, 5, 6)])):
        basis = null_space(m, spec, 3)
        assert len(basis) == 3 - matrix_rank(m, spec)
        GF = galois_field(spec)
        A = GF(np.array(m))
        for x in basis:
            assert not any((A @ GF(np.array(x))).tolist())
        assert rref(basis, spec)[0] == tuple(basis)
    assert null_space([], f3, 2) == [(1, 0), (0, 1)]


def test_intersection_matches_common_elements(f3):
    f4 = field_new(2, 2, (1, 1, 1))
    for spec, n in ((f3, 3), (f4, 3)):
        spaces = enumerate_all_subspaces(spec, n)
        for u, v in itertools.combinations(spaces, 2):
            assert set(elements(intersect(u, v))) == set(elements(u)) & set(elements(v))


def test_min_vector_of_difference_by_enumeration(f2):
    spaces = enumerate_all_subspaces(f2, 3)
    for u, v in itertools.product(spaces, repeat=2):
        if contains(v, u):
            continue
        x = min_vector_of_difference(u, v)
        assert contains_vec(u, x)
        assert not contains_vec(v, x)
        outside = [y for y in elements(u) if not contains_vec(v, y)]
        assert all(vector_key(x) <= vector_key(y) for y in outside)


def test_worked_example_intersection(f2):
    u = span([unit_vector(f2, 4, 2), unit_vector(f2, 4, 3), unit_vector(f2, 4, 4)], 4)
    v = span([vector(f2, (1, 1, 0, 0)), unit_vector(f2, 4, 3), unit_vector(f2, 4, 4)], 4)
    assert intersect(u, v) == span([unit_vector(f2, 4, 3), unit_vector(f2, 4, 4)], 4)
    assert min_vector_of_difference(u, v) == (0, 1, 0, 0)
    assert min_vector_of_difference(v, u) == (1, 1, 0, 0)
    assert min_nonzero_vector(intersect(u, v)) == (0, 0, 0, 1)


def test_span_rejects_mixed_fields(f2, f3):
    with pytest.raises(FieldMismatch):
        span([vector(f2, (1, 0)), vector(f3, (0, 1))], 2)
