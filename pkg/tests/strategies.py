"""Shared hypothesis strategies."""

from hypothesis import assume
from hypothesis import strategies as st

from cferrsum.exactnum import QuadraticSurd, is_square

radicands = st.integers(2, 2000).filter(lambda d: not is_square(d))


@st.composite
def surds(draw, D=None, irrational=True):
    d = draw(radicands) if D is None else D
    a = draw(st.integers(-300, 300))
    b = draw(st.integers(-20, 20).filter(lambda v: v != 0) if irrational else st.integers(-20, 20))
    c = draw(st.integers(1, 60))
    return QuadraticSurd(a, b, c, d)


@st.composite
def surd_pairs(draw):
    d = draw(radicands)
    return draw(surds(D=d, irrational=False)), draw(surds(D=d, irrational=False))


words = st.lists(st.integers(1, 10), min_size=1, max_size=6).map(tuple)


@st.composite
def surds_above_one(draw):
    x = draw(surds())
    assume(x > 1)
    return x
