import itertools

import pytest

from qshell.errors import DimensionMismatch, DivisionByZero, FieldMismatch, NonPrime, ParseError, ReducibleModulus, UnsupportedSize
from qshell.gf import (
    admissible_permutation,
    element,
    element_to_poly,
    elem_cmp,
    field_new,
    format_field_spec,
    parse_element,
    parse_field_spec,
    unit_vector,
    vec_cmp,
    vector,
)


def _f4():
    return field_new(2, 2, (1, 1, 1))


def _f9():
    return field_new(3, 2, (1, 0, 1))


def test_field_new_rejects_bad_input():
    with pytest.raises(NonPrime):
        field_new(4)
    with pytest.raises(NonPrime):
        field_new(1)
    with pytest.raises(ReducibleModulus):
        field_new(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ReducibleModulus):
        field_new(2, 4)
    with pytest.raises(UnsupportedSize):
        field_new(2, 17)


def test_parse_and_format_field_spec(f16):
    assert parse_field_spec("gf(2^4):x^4+x+1") == f16
    assert format_field_spec(f16) == "gf(2^4):x^4+x+1"
    assert parse_field_spec(" GF(3) ").q == 3
    with pytest.raises(ParseError):
        parse_field_spec("gf(2^4)")
    with pytest.raises(ParseError):
        parse_field_spec("F16")


def test_powers_of_a_in_f16(f16):
    a = element(f16, 2)
    a3 = element(f16, 8)
    assert (a3 * a).rep == 3  # a^4 = a + 1
    assert parse_element(f16, "a^3+a^2+a+1") == 15
    assert parse_element(f16, "6") == 6
    assert element_to_poly(f16, 6) == "a^2+a"
    assert element_to_poly(f16, 11) == "a^3+a+1"


@pytest.mark.parametrize("build", [lambda: field_new(2), lambda: field_new(3), _f4, lambda: field_new(5), _f9])
def test_field_axioms_exhaustive(build):
    spec = build()
    elems = [element(spec, r) for r in range(spec.q)]
    zero, one = elems[0], elems[1]
    for x in elems:
        assert (x + zero) == x
        assert (x * one) == x
        assert (x + (-x)) == zero
        if x.rep:
            assert (x * (one / x)) == one
    for x, y in itertools.product(elems, repeat=2):
        assert x + y == y + x
        assert x * y == y * x
    for x, y, z in itertools.product(elems, repeat=3):
        assert x * (y + z) == x * y + x * z
        assert (x + y) + z == x + (y + z)


def test_f16_multiplication_is_associative(f16):
    elems = [element(f16, r) for r in range(16)]
    for x, y, z in itertools.product(elems, repeat=3):
        assert (x * y) * z == x * (y * z)


def test_inverse_of_zero_raises(f16):
    with pytest.raises(DivisionByZero):
        element(f16, 1) / element(f16, 0)
    with pytest.raises(ZeroDivisionError):
        element(field_new(3), 2) / element(field_new(3), 0)


def test_element_order(f16):
    assert elem_cmp(element(f16, 0), element(f16, 1)) == -1
    assert elem_cmp(element(f16, 1), element(f16, 2)) == -1
    assert elem_cmp(element(f16, 9), element(f16, 9)) == 0
    with pytest.raises(FieldMismatch):
        elem_cmp(element(f16, 1), element(field_new(2), 1))
    with pytest.raises(FieldMismatch):
        element(f16, 1) + element(field_new(2), 1)


@pytest.mark.parametrize("build,n", [(lambda: field_new(2), 4), (lambda: field_new(3), 3)])
def test_vector_order_is_total(build, n):
    spec = build()
    vecs = [vector(spec, c) for c in itertools.product(range(spec.q), repeat=n)]
    for u, v in itertools.product(vecs, repeat=2):
        assert vec_cmp(u, v) == -vec_cmp(v, u)
        assert (vec_cmp(u, v) == 0) == (u == v)
    ordered = sorted(vecs)
    for u, v in zip(ordered, ordered[1:]):
        assert vec_cmp(u, v) == -1


def test_vector_order_examples(f2):
    assert vec_cmp(vector(f2, (0, 1, 0, 0)), vector(f2, (1, 1, 0, 0))) == -1
    assert vec_cmp(vector(f2, (0, 0, 0, 1)), vector(f2, (0, 0, 1, 0))) == -1
    with pytest.raises(DimensionMismatch):
        vec_cmp(vector(f2, (0, 1)), vector(f2, (0, 1, 0)))


def test_unit_vector(f2):
    assert unit_vector(f2, 4, 1).coords == (1, 0, 0, 0)
    assert unit_vector(f2, 4, 4).coords == (0, 0, 0, 1)


def test_admissible_permutation_fixes_zero_and_one(f16):
    rank = admissible_permutation(f16)
    assert sorted(rank) == list(range(16))
    assert rank[0] == 0 and rank[1] == 1
    assert rank[15] == 2
    assert rank[2] == 15


def test_element_rep_must_lie_in_the_field():
    with pytest.raises(FieldMismatch):
        element(_f4(), 4)
    with pytest.raises(FieldMismatch):
        element(field_new(3), -1)
