import itertools

import pytest
from hypothesis import strategies as st

from finlef.fixtures import fixture
from finlef.poset import Poset, iter_posets


def posets_upto(n):
    for k in range(1, n + 1):
        yield from iter_posets(k)


def transitive_closure_masks(n, pairs):
    down = [1 << i for i in range(n)]
    for i, j in pairs:
        down[j] |= 1 << i
    changed = True
    while changed:
        changed = False
        for j in range(n):
            new = down[j]
            for i in range(n):
                if down[j] >> i & 1:
                    new |= down[i]
            if new != down[j]:
                down[j] = new
                changed = True
    return down


@st.composite
def random_posets(draw, min_size=1, max_size=6):
    """Random labelled posets: a random DAG on 0 < 1 < ... closed transitively, then shuffled."""
    n = draw(st.integers(min_size, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = [p for p in pairs if draw(st.booleans())]
    perm = draw(st.permutations(range(n)))
    down = transitive_closure_masks(n, chosen)
    names = [f"v{perm[i]}" for i in range(n)]
    covers = [(names[i], names[j]) for j in range(n) for i in range(n) if i != j and down[j] >> i & 1]
    order = sorted(names)
    return Poset.from_covers(order, covers)


def all_maps(X, Y):
    for image in itertools.product(Y.elements, repeat=len(X)):
        yield dict(zip(X.elements, image))


@pytest.fixture
def C4():
    return fixture("circle4").poset


@pytest.fixture
def chain2():
    return fixture("chain2").poset


@pytest.fixture
def sphere6():
    return fixture("sphere6").poset


@pytest.fixture
def corona_doc():
    return fixture("corona-G")


@pytest.fixture
def example_F():
    return fixture("example-s1-F").multimap("F")


@pytest.fixture
def singleton():
    return Poset.from_covers(["a"], [])
