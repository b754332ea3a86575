"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from greedy_lebesgue.coeffspace import CoeffVector

small_fracs = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def vectors(draw, max_len=8, values=small_fracs, min_len=0):
    vals = draw(st.lists(values, min_size=min_len, max_size=max_len))
    return CoeffVector.from_dense(vals)


@st.composite
def int_vectors(draw, max_len=7, lo=-3, hi=3):
    vals = draw(st.lists(st.integers(lo, hi), max_size=max_len))
    return CoeffVector.from_dense([Fraction(v) for v in vals])
