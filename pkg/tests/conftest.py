import itertools

import pytest
from hypothesis import strategies as st

from knotshift.zpr import RingParams


def closure(gens, q, m):
    """Additive closure of a generating set in (Z/q)^m, by breadth-first sums."""
    seen = {(0,) * m}
    frontier = list(seen)
    while frontier:
        new = []
        for s in frontier:
            for g in gens:
                t = tuple((a + b) % q for a, b in zip(s, g))
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        frontier = new
    return seen


def ambient(q, m):
    return list(itertools.product(range(q), repeat=m))


# (p, r, m) with p^(r m) small enough to enumerate
SMALL_SHAPES = [(2, 1, 1), (2, 1, 3), (2, 2, 2), (2, 3, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2), (2, 2, 3), (3, 1, 3)]


@st.composite
def generators(draw, shapes=SMALL_SHAPES, max_gens=4):
    p, r, m = draw(st.sampled_from(shapes))
    q = p**r
    gens = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=m, max_size=m), max_size=max_gens))
    return RingParams(p, r), m, gens


@pytest.fixture
def z4():
    return RingParams(2, 2)
