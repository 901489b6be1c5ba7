"""Hypothesis strategies shared by the tests."""

from fractions import Fraction

from hypothesis import strategies as st

from netcolor.chain import Interval

rationals = st.builds(Fraction, st.integers(0, 40), st.integers(1, 4))


@st.composite
def interval_sets(draw, max_size=24):
    n = draw(st.integers(0, max_size))
    out = []
    for i in range(n):
        a = draw(rationals)
        w = draw(st.builds(Fraction, st.integers(0, 12), st.integers(1, 3)))
        out.append(Interval(i, a, a + w))
    return out
