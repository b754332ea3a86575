from fractions import Fraction

import pytest
from hypothesis import given

from greedy_lebesgue.coeffspace import (CoeffVector, format_vector, index_set, indicator,
                                        initial_projection, parse_vector, project, support)
from strategies import vectors

V = CoeffVector.from_dense([3, 1, 2, 2])


def test_support_examples():
    assert support(CoeffVector.from_dict({1: 3, 3: 2})) == (1, 3)
    assert support(CoeffVector()) == ()
    assert support(CoeffVector.from_dict({2: -1})) == (2,)


def test_project_examples():
    assert project(V, {1, 3}) == CoeffVector.from_dict({1: 3, 3: 2})
    assert project(V, ()) == CoeffVector()
    assert project(V, {5}) == CoeffVector()


def test_initial_projection_examples():
    assert initial_projection(V, 2) == CoeffVector.from_dense([3, 1])
    assert initial_projection(V, 0) == CoeffVector()
    assert initial_projection(CoeffVector.from_dict({5: 7}), 4) == CoeffVector()


def test_indicator_examples():
    assert indicator({1, 2}, (1, -1)) == CoeffVector.from_dense([1, -1])
    assert indicator(()) == CoeffVector()
    assert indicator({2, 4}) == CoeffVector.from_dict({2: 1, 4: 1})
    assert indicator({2, 4}, {2: -1, 4: 1}) == CoeffVector.from_dict({2: -1, 4: 1})


def test_indicator_errors():
    with pytest.raises(ValueError):
        indicator({1, 2}, (1,))
    with pytest.raises(ValueError):
        indicator({1}, (2,))
    with pytest.raises(ValueError):
        indicator({1, 2}, {1: 1})


def test_index_set_sorted_unique():
    assert index_set([3, 1, 3]) == (1, 3)
    with pytest.raises(ValueError):
        index_set([0])


def test_zero_entries_dropped():
    v = CoeffVector.from_dense([0, 1, 0])
    assert v.support() == (2,)
    assert len(v) == 1


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_vector("2:1 1:1")
    with pytest.raises(ValueError):
        parse_vector("1")


@given(vectors())
def test_format_parse_roundtrip(v):
    assert parse_vector(format_vector(v), exact=True) == v


@given(vectors(), vectors())
def test_add_sub_inverse(u, v):
    assert (u + v) - v == u
    assert u - u == CoeffVector()
    assert -(-u) == u


@given(vectors())
def test_projection_identities(v):
    assert project(v, v.support()) == v
    assert project(v, ()) == CoeffVector()
    k = v.max_index()
    assert initial_projection(v, k) == v
    for m in range(k + 1):
        assert initial_projection(v, m) == project(v, range(1, m + 1))


@given(vectors())
def test_scale_and_float(v):
    assert v.scale(2) == v + v
    assert v.scale(0) == CoeffVector()
    assert all(isinstance(a, float) for a in v.as_float().values())
    assert v.max_abs() == max((abs(a) for a in v.values()), default=0)
