import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greedy_lebesgue import surd
from greedy_lebesgue.coeffspace import CoeffVector, project
from greedy_lebesgue.greedy import (BudgetError, a_p, canonical_greedy_set, canonical_order,
                                    eta_p, greedy_sets, is_greedy_set, tga_residual, truncate)
from greedy_lebesgue.spaces import c0_sup
from strategies import int_vectors, vectors

F = CoeffVector.from_dense([3, 1, 2, 2])


def test_greedy_sets_examples():
    assert greedy_sets(F, 2) == [(1, 3), (1, 4)]
    assert greedy_sets(F, 0) == [()]
    assert greedy_sets(F, 4) == [(1, 2, 3, 4)]
    assert greedy_sets(F, 5, window=5) == [(1, 2, 3, 4, 5)]
    with pytest.raises(ValueError):
        greedy_sets(F, 6, window=5)
    with pytest.raises(BudgetError):
        greedy_sets(CoeffVector.from_dense([1] * 30), 15, budget=1000)


def test_canonical_examples():
    assert canonical_greedy_set(F, 2).order == (1, 3)
    assert canonical_greedy_set(CoeffVector.from_dense([-5, 5]), 1).order == (1,)
    assert canonical_greedy_set(F, 3).order == (1, 3, 4)
    assert canonical_order(CoeffVector.from_dict({3: 1}), 3) == (3, 1, 2)


def test_tga_residual_examples():
    s = c0_sup()
    assert tga_residual(s, F, 2) == CoeffVector.from_dict({2: 1, 4: 2})
    assert tga_residual(s, F, 0) == F
    assert tga_residual(s, F, 4) == CoeffVector()
    assert tga_residual(s, F, 9) == CoeffVector()


def test_truncate_examples():
    f = CoeffVector.from_dense([5, -2, 0.5])
    t = truncate(f, 1)
    assert t.over == (1, 2) and t.truncated == CoeffVector.from_dense([1, -1, 0.5])
    t = truncate(f, 10)
    assert t.over == () and t.truncated == f
    t = truncate(f, 0.5)
    assert t.over == (1, 2) and t.truncated == CoeffVector.from_dense([0.5, -0.5, 0.5])
    with pytest.raises(ValueError):
        truncate(f, 0)


@given(int_vectors(max_len=7), st.integers(0, 8))
def test_greedy_sets_match_brute_force(f, m):
    W = max(f.max_index(), m, 1)
    brute = sorted(A for A in combinations(range(1, W + 1), m) if is_greedy_set(f, A))
    got = greedy_sets(f, m, window=W)
    assert got == brute
    for A in got:
        assert is_greedy_set(f, A)


@given(vectors(max_len=8), st.integers(1, 8))
def test_canonical_nested_and_greedy(f, m):
    W = max(f.max_index(), m)
    prev = canonical_order(f, m - 1)
    cur = canonical_order(f, m)
    assert cur[: m - 1] == prev
    assert tuple(sorted(cur)) in greedy_sets(f, m, window=W)


@given(st.lists(st.integers(1, 40), max_size=7, unique=True), st.integers(0, 7))
def test_distinct_moduli_unique_greedy_set(vals, m):
    f = CoeffVector.from_dense(vals)
    if m <= len(f):
        assert len(greedy_sets(f, m)) == 1


@given(vectors(max_len=8), st.fractions(Fraction(1, 4), 5, max_denominator=4))
def test_truncation_contractive(f, alpha):
    t = truncate(f, alpha)
    assert t.over == tuple(n for n, a in f if abs(a) > alpha)
    for n in range(1, f.max_index() + 1):
        assert abs(t.truncated[n]) <= abs(f[n])
        assert abs(t.truncated[n]) <= max(alpha, abs(f[n]))


@given(vectors(max_len=8))
def test_tga_converges_at_support_size(f):
    assert tga_residual(c0_sup(), f, len(f)) == CoeffVector()
    res = canonical_greedy_set(f, 2)
    assert res.greedy_sum == project(f, res.order)
    assert res.residual == f - res.greedy_sum


def test_a_p_examples():
    assert a_p(1) == 1
    assert a_p(1, exact=True) == 1
    assert a_p(Fraction(1, 2), exact=True) == (surd.sqrt(2) - 1) ** 2
    assert math.isclose(a_p(0.5), 0.171572875253810, rel_tol=1e-12)
    ps = np.linspace(0.01, 1, 200)
    vals = [a_p(float(p)) for p in ps]
    assert all(x < y for x, y in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        a_p(1.5)


def grid_eta(p, u, points=10 ** 6):
    t = np.linspace(0, 1, points + 2)[1:-1]
    c = 1 / ((2 ** p - 1) ** (1 / p) * u)
    vals = (1 - t ** p) ** (-1 / p) * (1 - (1 + c * t) ** (-p)) ** (-1 / p)
    return float(vals.min())


def test_eta_closed_form_p1():
    assert abs(eta_p(1, 1) - (3 + 2 * math.sqrt(2))) < 1e-9
    v, t = eta_p(1, 1, return_argmin=True)
    assert abs(t - (math.sqrt(2) - 1)) < 1e-6


@pytest.mark.parametrize("p,u", [(1, 2), (1, 7.5), (0.5, 1), (0.5, 3), (0.75, 10)])
def test_eta_matches_dense_grid(p, u):
    g = grid_eta(p, u)
    v = eta_p(p, u)
    assert v <= g * (1 + 1e-9)
    assert math.isclose(v, g, rel_tol=1e-6)
    assert v >= 1


@pytest.mark.parametrize("p", [1, 0.5])
def test_eta_tracks_power(p):
    r = [eta_p(p, u) / u ** (1 / p) for u in np.logspace(0, 2, 40)]
    assert max(r) / min(r) <= 10


def test_eta_errors():
    with pytest.raises(ValueError):
        eta_p(1, 0)
    with pytest.raises(ValueError):
        eta_p(0, 1)
