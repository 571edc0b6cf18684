"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from concordia.link import braid_closure


@st.composite
def braid_words(draw, max_strands=4, max_len=8):
    n = draw(st.integers(2, max_strands))
    gens = st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g]))
    word = draw(st.lists(gens, min_size=1, max_size=max_len))
    return word, n


@st.composite
def diagrams(draw, max_strands=4, max_len=8):
    word, n = draw(braid_words(max_strands, max_len))
    return braid_closure(word, n)
