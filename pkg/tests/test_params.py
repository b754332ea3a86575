import math
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from greedy_lebesgue import spaces as sp
from greedy_lebesgue.coeffspace import CoeffVector, indicator
from greedy_lebesgue.greedy import greedy_sets
from greedy_lebesgue import params as pm
from greedy_lebesgue.greedy import BudgetError
from greedy_lebesgue.params import (InadmissibleInstance, ParamKind, SearchConfig,
                                    UnboundedWitness, WindowedEngine, WitnessInstance,
                                    admissibility_error, basis_constant, estimate,
                                    omega_induced_ls, ratio_eval, windowed_exact)
from strategies import int_vectors

SUM = sp.c0_summing(exact=True)
L1 = sp.lp_quasi(1, exact=True)
HALF = sp.lp_quasi(Fraction(1, 2), exact=True)
SUP = sp.c0_sup(exact=True)


def W(kind, m, f=(), A=(), B=(), eps=(), eta=(), **kw):
    return WitnessInstance(kind, m, CoeffVector.from_dense(list(f)), A, B, eps, eta, **kw)


# -- ratio_eval -----------------------------------------------------------------

def test_mu_t_summing_example():
    # all-ones over alternating: the numerator carries the 1_{1..4} norm
    inst = W("mu_t", 4, A=(1, 2, 3, 4), B=(1, 2, 3, 4), eps=(1, 1, 1, 1), eta=(-1, 1, -1, 1))
    assert ratio_eval(SUM, inst) == 4
    flipped = W("mu_t", 4, A=(1, 2, 3, 4), B=(1, 2, 3, 4), eps=(-1, 1, -1, 1), eta=(1, 1, 1, 1))
    assert ratio_eval(SUM, flipped) == Fraction(1, 4)


@given(int_vectors(max_len=6), st.integers(0, 6))
def test_g_in_l1_at_most_one(f, m):
    Wn = max(f.max_index(), m, 1)
    for A in greedy_sets(f, m, window=Wn):
        r = ratio_eval(L1, W("g", m, f.dense(), A))
        assert r <= 1
        if set(A) == set(f.support()) and f:
            assert r == 1


@given(f=int_vectors(max_len=5), data=st.data())
def test_omega_l1_closed_form(f, data):
    m = 6
    top = f.max_abs() if f else 1
    t = data.draw(st.sampled_from([top, 2 * top, -top]))
    lo = min(f.support()) if f else 7
    free = [n for n in range(6, 12) if n not in f.support()]
    B = tuple(data.draw(st.lists(st.sampled_from(free), max_size=3, unique=True)))
    rest = min([lo] + list(B)) if (f or B) else 7
    A_pool = [n for n in range(1, min(rest, m)) if n < rest]
    A = tuple(data.draw(st.lists(st.sampled_from(A_pool), max_size=len(B), unique=True))) if A_pool else ()
    inst = WitnessInstance("omega", m, f, A, B, (1,) * len(A), (1,) * len(B), t=t)
    assert admissibility_error(inst) is None
    l1 = sum((abs(a) for a in f.values()), Fraction(0))
    want = (l1 + abs(t) * len(A)) / (l1 + abs(t) * len(B)) if l1 + len(B) else 0
    assert ratio_eval(L1, inst) == want
    assert ratio_eval(L1, inst) <= 1


def test_zero_over_zero_is_zero():
    assert ratio_eval(SUM, W("g", 1)) == 0
    assert ratio_eval(SUM, W("K_basis", 0, k=2)) == 0


def test_unbounded_witness_reported():
    inst = W("g", 1)
    with pytest.raises(UnboundedWitness):
        pm._quotient(Fraction(1), Fraction(0), inst)


@pytest.mark.parametrize("inst", [
    W("g", 1, [1, 2], (1,)),  # not greedy
    W("g", 1, [2, 1], (1, 2)),  # too large
    W("g_c", 0, [1], ()),
    W("r_trunc", 1, [1], ()),
    W("L_ch", 2, [3, 2, 1], (1,)),
    W("mu", 2, A=(1,), B=(1, 2)),
    W("mu_d", 2, A=(1,), B=(1,)),
    W("lambda", 1, [1, 2], (3,), (1,)),
    W("lambda_d", 1, [1], (1,), (1,)),
    W("lambda_c", 3, [0, 0, 0, 0, 1], (4,), (5,)),
    W("lambda_c", 3, [0, 1], (2,), (2,)),
    W("nu", 1, [2], (2,), (3,)),
    W("nu", 1, [1], (1,), (3,)),
    W("omega", 2, [0, 0, 1], (2,), (4,), t=1),
    W("omega", 3, [0, 0, 1], (1,), (4,), t=Fraction(1, 2)),
    W("omega", 3, [0, 0, 1], (1,), (3,), t=1),
    W("D_cons", 2, A=(2,), B=(1,)),
    W("K_basis", 1, k=-1),
])
def test_inadmissible_rejected(inst):
    assert admissibility_error(inst) is not None
    with pytest.raises(InadmissibleInstance):
        ratio_eval(SUM, inst)


def test_omega_flag_reading():
    inst = W("omega", 2, [0, 0, 1], (2,), (4,), t=1)
    assert admissibility_error(inst, omega_strict=True) is not None
    assert admissibility_error(inst, omega_strict=False) is None


def test_sign_patterns_default_to_ones():
    inst = W("lambda", 1, [1], (2,), (1,))
    assert inst.eps == (1,)
    assert admissibility_error(W("g", 1, [1], (1,), eps=(1,))) is not None


def test_instance_roundtrip():
    inst = W("omega", 5, [0, 0, 1, -2], (1,), (6, 7), (1,), (-1, 1), t=Fraction(5, 2))
    assert WitnessInstance.from_dict(inst.to_dict()) == inst


# -- windowed exact -------------------------------------------------------------

def test_spec_windowed_examples():
    grid7 = (0, 1, -1, 2, -2, 3, -3)
    assert windowed_exact(L1, "L", 2, 5, grid7).value == 1
    est = windowed_exact(SUM, "k_uncond", 2, 4, (0, 1, -1))
    assert est.value == 2
    assert ratio_eval(SUM, est.witness) == 2
    assert windowed_exact(SUM, "g_c", 0, 4).value == 0


def test_basis_constants():
    assert basis_constant(L1, 5).value == 1
    assert basis_constant(SUP, 5).value == 1
    v = basis_constant(SUM, 6, (0, 1, -1, 2, -2)).value
    assert 1 <= v <= 2


@pytest.mark.parametrize("space", [SUM, L1, SUP, HALF], ids=lambda s: s.label())
def test_windowed_witnesses_recompute(space):
    eng = WindowedEngine(space, 3, (0, 1, -1, 2), 2)
    for kind in ParamKind:
        prof = eng.profile(kind)
        for m, est in prof.items():
            if est.witness is None:
                assert est.value == 0
                continue
            assert admissibility_error(est.witness) is None
            val = ratio_eval(space.with_exact(eng.exact), est.witness)
            if eng.exact:
                assert val == est.value, (kind, m)
            else:
                assert math.isclose(val, est.value, rel_tol=1e-9, abs_tol=1e-12), (kind, m)


def _all_sets(N, m):
    for r in range(0, m + 1):
        yield from combinations(range(1, N + 1), r)


def _brute(space, kind, m, N, grid):
    """Exhaustive max of ratio_eval over the window, all sets and sign patterns."""
    best = Fraction(0)
    fs = [CoeffVector.from_dense([Fraction(x) for x in t]) for t in product(grid, repeat=N)]
    set_kinds = {"mu", "mu_d", "mu_t", "mu_t_d", "D_cons"}
    for f in ([CoeffVector()] if kind in set_kinds else fs):
        for A in _all_sets(N, m):
            Bs = list(_all_sets(N, m)) if kind not in ("g", "g_c", "k_uncond", "L_s") else [()]
            for B in Bs:
                eps_all = list(product((1, -1), repeat=len(A))) if kind in pm._USES_EPS else [()]
                eta_all = list(product((1, -1), repeat=len(B))) if kind in pm._USES_ETA else [()]
                for eps in eps_all:
                    for eta in eta_all:
                        inst = WitnessInstance(kind, m, f, A, B, eps, eta)
                        if admissibility_error(inst) is None:
                            best = max(best, ratio_eval(space, inst))
    return best


@pytest.mark.parametrize("kind", ["g", "g_c", "k_uncond", "L_s", "lambda", "lambda_c",
                                  "lambda_d", "mu", "mu_d", "mu_t", "mu_t_d", "D_cons", "nu"])
def test_windowed_equals_brute_force(kind):
    grid = (0, 1, -1, 2)
    eng = WindowedEngine(SUM, 3, grid, 2)
    prof = eng.profile(kind)
    for m in (1, 2):
        assert prof[m].value == _brute(SUM, kind, m, 3, grid), m


def test_omega_induced_instance_dominates():
    eng = WindowedEngine(SUM, 4, (0, 1, -1, 2, -2), 3)
    om = eng.profile("omega")
    for m in (1, 2, 3):
        w = om[m].witness
        ind = omega_induced_ls(w)
        assert admissibility_error(ind) is None
        assert ind.m <= m
        assert ratio_eval(SUM, w) <= ratio_eval(SUM, ind)


def test_windowed_budget_error():
    with pytest.raises(BudgetError):
        WindowedEngine(SUM, 10, tuple(range(-4, 5)), 2, budget=1000)


# -- witness estimates ----------------------------------------------------------

def test_estimate_examples():
    cfg = SearchConfig(pool_size=30)
    for k in (1, 2, 3):
        assert estimate(SUM, "mu_t", 2 * k, cfg).value >= 2 * k
    for m in (1, 3, 5):
        assert estimate(L1, "mu", m, cfg).value == 1
    with pytest.raises(ValueError):
        estimate(SUM, "g", 0, cfg)


def test_prop6_lambda_witness():
    space = sp.prop6_space([(1297, 6)], exact=False)
    est = estimate(space, "lambda", 1297, SearchConfig(pool_size=5))
    assert est.value >= 1297 / 36
    assert est.mode == "witness_lower_bound"


@pytest.mark.parametrize("kind", ["g", "lambda", "mu_t", "L_s", "omega"])
def test_estimate_monotone_and_recomputable(kind):
    cfg = SearchConfig(pool_size=40)
    prev = Fraction(0)
    for m in range(1, 6):
        est = estimate(SUM, kind, m, cfg)
        assert est.value >= prev
        prev = est.value
        if est.witness is not None:
            assert ratio_eval(SUM, est.witness) == est.value


def test_search_config_from_dict():
    cfg = SearchConfig.from_dict({"pool_size": 5, "grid": ["0", "1/2"], "m_range": [1, 3]})
    assert cfg.grid == (0, Fraction(1, 2)) and cfg.m_range == (1, 3)
    with pytest.raises(ValueError):
        SearchConfig.from_dict({"bogus": 1})


def test_estimate_dict_fields():
    d = estimate(SUM, "g", 2, SearchConfig(pool_size=5)).to_dict()
    assert d["mode"] == "witness_lower_bound" and d["kind"] == "g"
    assert indicator({1}) == CoeffVector.from_dense([1])
