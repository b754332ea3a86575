import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from greedy_lebesgue import spaces as sp
from greedy_lebesgue.chebyshev import (best_sparse_residual, chebyshev_sum, ctga,
                                       minmax_lp, polyhedral_functionals, residual_value,
                                       verify_certificate)
from greedy_lebesgue.coeffspace import CoeffVector, project
from greedy_lebesgue.greedy import canonical_order
import oracles
from corpus import CHEBYSHEV_CORPUS
from strategies import int_vectors, vectors


def corpus_cases():
    for i, (space, f, A) in enumerate(CHEBYSHEV_CORPUS):
        yield pytest.param(space, f, A, id=f"{i:03d}-{space}")


@pytest.mark.parametrize("space_text,f,A", list(corpus_cases()))
def test_lp_matches_grid_oracle(space_text, f, A):
    space = sp.parse_space(space_text)
    v = CoeffVector.from_dense([Fraction(str(x)) for x in f])
    fit = chebyshev_sum(space, v, A, method="lp" if space.kind != "lp_quasi" else "auto")
    want = oracles.chebyshev_grid_oracle(lambda w: sp.norm(space, w), v, A)
    assert abs(float(fit.residual) - want) <= 1e-6


def test_examples():
    f = CoeffVector.from_dense([4, 3, 1])
    fit = chebyshev_sum(sp.lp_quasi(1), f, (1,))
    assert fit.coeffs[1] == 4 and fit.residual == 4
    fit = chebyshev_sum(sp.c0_sup(exact=True), f, (1,))
    assert fit.residual == 3 and fit.coeffs[1] == 4
    fit = chebyshev_sum(sp.c0_sup(exact=True), f, (1, 3))
    assert fit.residual == 3
    assert chebyshev_sum(sp.c0_summing(exact=True), f, ()).residual == 3 + 4 + 1
    ones = CoeffVector.from_dense([1, 1, 1, 1])
    fit = chebyshev_sum(sp.c0_summing(exact=True), ones, (1, 2, 3, 4))
    assert fit.residual == 0 and fit.coeffs == {1: 1, 2: 1, 3: 1, 4: 1}
    g = CoeffVector.from_dense([3, 1, 2, 2])
    assert ctga(sp.c0_sup(exact=True), g, 2).residual <= 2
    assert ctga(sp.c0_sup(exact=True), g, 0).residual == 3
    assert ctga(sp.lp_quasi(1), f, 1).residual == 4


def test_polyhedral_functionals_counts():
    assert polyhedral_functionals(sp.c0_summing(), 4).count() == 4
    assert polyhedral_functionals(sp.c0_sup(), 3).count() == 3
    with pytest.raises(sp.SpaceError):
        polyhedral_functionals(sp.lp_quasi(0.5), 3)


@pytest.mark.parametrize("kind", ["prop5_space", "prop6_space"])
def test_constructed_functionals_agree_with_norm(kind):
    space = sp.SpaceSpec(kind, 1, ((2, 6),), False, False)
    fs = polyhedral_functionals(space, 4)
    rng = random.Random(3)
    for _ in range(10 ** 4):
        v = CoeffVector.from_dense([rng.uniform(-3, 3) if rng.random() < 0.8 else 0
                                    for _ in range(4)])
        assert math.isclose(fs.value(v, fs.separator(v)), sp.norm(space, v), rel_tol=1e-9,
                            abs_tol=1e-12)


@pytest.mark.parametrize("space", [sp.c0_sup(exact=True), sp.c0_summing(exact=True)],
                         ids=["c0_sup", "c0_summing"])
@given(f=int_vectors(max_len=6), data=st.data())
def test_closed_form_residual_equals_lp(space, f, data):
    W = max(f.max_index(), 1)
    S = data.draw(st.lists(st.integers(1, W + 1), max_size=3, unique=True))
    assert residual_value(space, f, S) == chebyshev_sum(space, f, S, method="lp").residual


@pytest.mark.parametrize("space", [sp.c0_sup(exact=True), sp.c0_summing(exact=True),
                                   sp.lp_quasi(1, exact=True),
                                   sp.prop6_space([(2, 6)], strict_growth=False, exact=True)],
                         ids=lambda s: s.label())
@given(f=int_vectors(max_len=5), m=st.integers(0, 4))
def test_ctga_dominates_and_certified(space, f, m):
    fit = ctga(space, f, m)
    tga = sp.norm(space, f - project(f, canonical_order(f, m)))
    assert fit.residual <= tga
    if fit.method == "lp_exact" and fit.support:
        assert verify_certificate(fit, f)


@given(f=int_vectors(max_len=5))
def test_feasibility_optimum(f):
    s = sp.c0_summing(exact=True)
    fit = chebyshev_sum(s, f, f.support())
    assert fit.residual == 0
    assert all(fit.coeffs[n] == f[n] for n in f.support())


def test_tie_break_deterministic():
    s = sp.c0_sup(exact=True)
    f = CoeffVector.from_dense([4, 3, 1])
    a = chebyshev_sum(s, f, (1, 3))
    b = chebyshev_sum(s, f, (1, 3))
    assert a.coeffs == b.coeffs
    # closest to the projection coefficients among minimizers
    assert a.coeffs == {1: 4, 3: 1}


@given(f=int_vectors(max_len=5), s=st.integers(0, 3))
def test_best_sparse_residual_brute(f, s):
    from itertools import combinations

    for space in (sp.lp_quasi(1, exact=True), sp.c0_sup(exact=True), sp.c0_summing(exact=True)):
        W = max(f.max_index(), 1)
        brute = min(residual_value(space, f, S) for r in range(0, min(s, W) + 1)
                    for S in combinations(range(1, W + 1), r))
        assert best_sparse_residual(space, f, s, W) == brute


def test_iterative_method_for_p_below_one():
    s = sp.lp_quasi(0.5)
    f = CoeffVector.from_dense([3, 1, 2])
    fit = chebyshev_sum(s, f, (1, 2), method="iterative")
    assert fit.method == "iterative"
    assert fit.residual <= sp.norm(s, f - project(f, (1, 2))) + 1e-9


def test_minmax_lp_window_error():
    fs = polyhedral_functionals(sp.c0_sup(), 2)
    with pytest.raises(ValueError):
        minmax_lp(fs, CoeffVector.from_dense([1, 1, 1]), (1,))
