import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from greedy_lebesgue import surd
from greedy_lebesgue.surd import Surd

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def mk(a, b, c):
    return a + b * surd.sqrt(2) + c * surd.sqrt(3)


def test_sqrt_simplifies():
    assert surd.sqrt(4) == 2
    assert surd.sqrt(8) == 2 * surd.sqrt(2)
    assert surd.sqrt(2) ** 2 == 2
    assert surd.sqrt(Fraction(1, 4)) == Fraction(1, 2)


def test_exact_comparisons():
    assert surd.sqrt(2) < Fraction(99, 70) + Fraction(1, 10 ** 6)
    assert surd.sqrt(2) > Fraction(140, 99)
    assert surd.sqrt(2) + surd.sqrt(3) < surd.sqrt(10)
    assert surd.sqrt(2) + surd.sqrt(3) > surd.sqrt(10) - Fraction(1, 50)
    assert not (surd.sqrt(2) + surd.sqrt(3) == surd.sqrt(10))


def test_is_exact_and_to_exact():
    assert surd.is_exact(Fraction(1, 3))
    assert surd.is_exact(surd.sqrt(2))
    assert not surd.is_exact(0.5)
    assert surd.to_exact(0.5) == Fraction(1, 2)


@given(fracs, fracs, fracs, fracs, fracs, fracs)
def test_field_ops_match_floats(a, b, c, d, e, f):
    x, y = mk(a, b, c), mk(d, e, f)
    assert math.isclose(float(x + y), float(x) + float(y), abs_tol=1e-9)
    assert math.isclose(float(x * y), float(x) * float(y), rel_tol=1e-9, abs_tol=1e-9)
    if x != 0:
        assert (x * (1 / x)) == 1


@given(fracs, fracs, fracs)
def test_sign_matches_float(a, b, c):
    x = mk(a, b, c)
    fx = float(x)
    if abs(fx) > 1e-9:
        assert (x > 0) == (fx > 0)
    assert abs(x) >= 0
    assert (x == 0) == (a == 0 and b == 0 and c == 0)


def test_surd_not_hash_lossy():
    assert hash(surd.to_exact(Fraction(3, 2))) == hash(Fraction(3, 2))
    assert isinstance(surd.sqrt(2), Surd)


def test_sqrt_negative_raises():
    with pytest.raises(ValueError):
        surd.sqrt(-1)
