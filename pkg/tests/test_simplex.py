import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from greedy_lebesgue.simplex import linprog_max, nearest_point, solve_linear


def random_lp(rng, n, k):
    c = [rng.randint(-5, 5) for _ in range(n)]
    rows = []
    for _ in range(k):
        sense = rng.choice(["<=", "<=", ">=", "="])
        rows.append(([rng.randint(-4, 4) for _ in range(n)], sense, rng.randint(-3, 8)))
    # keep it bounded
    rows.append(([1] * n, "<=", 10))
    return c, rows


def scipy_value(c, rows):
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for g, s, h in rows:
        if s == "<=":
            A_ub.append(g)
            b_ub.append(h)
        elif s == ">=":
            A_ub.append([-x for x in g])
            b_ub.append(-h)
        else:
            A_eq.append(g)
            b_eq.append(h)
    res = linprog(-np.array(c, float), A_ub=A_ub or None, b_ub=b_ub or None,
                  A_eq=A_eq or None, b_eq=b_eq or None, bounds=[(0, None)] * len(c),
                  method="highs")
    return res.status, (-res.fun if res.status == 0 else None)


@pytest.mark.parametrize("exact", [True, False])
def test_lp_matches_scipy(exact):
    rng = random.Random(7)
    checked = 0
    for _ in range(150):
        n, k = rng.randint(1, 4), rng.randint(1, 5)
        c, rows = random_lp(rng, n, k)
        if exact:
            rows = [([Fraction(x) for x in g], s, Fraction(h)) for g, s, h in rows]
        else:
            rows = [([float(x) for x in g], s, float(h)) for g, s, h in rows]
        res = linprog_max(c, rows, exact=exact)
        status, val = scipy_value(c, rows)
        if status == 2:
            assert res.status == "infeasible"
            continue
        assert status == 0
        assert res.status == "optimal"
        assert math.isclose(float(res.value), val, abs_tol=1e-7)
        # primal feasibility
        for g, s, h in rows:
            lhs = sum(a * x for a, x in zip(g, res.x))
            if s == "<=":
                assert lhs <= h + (0 if exact else 1e-9)
            elif s == ">=":
                assert lhs >= h - (0 if exact else 1e-9)
            else:
                assert abs(lhs - h) <= (0 if exact else 1e-9)
        checked += 1
    assert checked > 50


def test_unbounded_detected():
    res = linprog_max([1, 0], [([1, -1], "<=", 1)], exact=True)
    assert res.status == "unbounded"


def test_degenerate_lp_terminates():
    # classic cycling example (Beale) is solved under Bland's rule
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    rows = [([Fraction(1, 4), -60, Fraction(-1, 25), 9], "<=", 0),
            ([Fraction(1, 2), -90, Fraction(-1, 50), 3], "<=", 0),
            ([0, 0, 1, 0], "<=", 1)]
    res = linprog_max(c, rows, exact=True)
    assert res.status == "optimal"
    assert res.value == Fraction(1, 20)


def test_solve_linear_and_singular():
    assert solve_linear([[2, 1], [1, 3]], [3, 5], exact=True) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_linear([[1, 2], [2, 4]], [1, 2], exact=True) is None


def test_nearest_point_projects_onto_halfspace():
    x = nearest_point([2, 2], [[1, 1]], [2], [0, 0], exact=True)
    assert x == [1, 1]
    x = nearest_point([Fraction(1, 2), 0], [[1, 1]], [2], [0, 0], exact=True)
    assert x == [Fraction(1, 2), 0]
