import itertools

import pytest
from hypothesis import given, settings

from conftest import all_maps, posets_upto, random_posets
from finlef.homology import homology
from finlef.poset import (
    BudgetExhausted,
    Poset,
    PosetError,
    is_monotone,
    iter_posets,
    monotone_maps,
    product,
)


def test_singleton(singleton):
    assert singleton.relation() == {("a", "a")}
    assert singleton.min_open("a") == {"a"}
    assert singleton.opposite() == singleton
    assert singleton.core() == singleton


def test_circle_model(C4):
    assert C4.maximal() == ("a", "b")
    assert C4.minimal() == ("c", "d")
    assert C4.min_open("a") == {"a", "c", "d"}
    assert C4.closure("c") == {"a", "b", "c"}
    assert C4.min_open_of_set({"a"}) == {"a", "c", "d"}
    assert C4.min_open_of_set({"c", "d"}) == {"c", "d"}
    assert C4.min_open_of_set(C4.elements) == set(C4.elements)


def test_construction_errors():
    with pytest.raises(PosetError, match="cycle"):
        Poset.from_covers("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(PosetError, match="duplicate"):
        Poset.from_covers(["a", "a"], [])
    with pytest.raises(PosetError, match="unknown"):
        Poset.from_covers(["a"], [("a", "z")])
    with pytest.raises(PosetError, match="empty"):
        Poset.from_covers([], [])
    assert len(Poset.from_covers([], [], allow_empty=True)) == 0


def test_cycle_is_named():
    with pytest.raises(PosetError) as info:
        Poset.from_covers("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    for x in "abc":
        assert repr(x) in str(info.value)


def test_redundant_covers_are_reduced():
    X = Poset.from_covers("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert X.covers == (("a", "b"), ("b", "c"))
    assert X.leq("a", "c")


def test_unknown_element(C4):
    with pytest.raises(PosetError):
        C4.min_open("z")


def test_opposite(C4):
    assert C4.opposite().covers == (("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"))
    assert C4.opposite().opposite() == C4


def test_product(chain2, singleton):
    P = product(chain2, chain2)
    assert len(P) == 4
    assert P.leq(("0", "0"), ("1", "1"))
    assert not P.leq(("0", "1"), ("1", "0"))
    assert len(P.covers) == 4
    S = product(singleton, chain2)
    assert [lo[1] + hi[1] for lo, hi in S.covers] == ["01"]


def test_subposet(C4):
    cone = C4.subposet({"a", "b", "c"})
    assert cone.covers == (("c", "a"), ("c", "b"))
    assert C4.subposet(C4.elements) == C4
    assert len(C4.subposet({"a"})) == 1


def test_beat_points_and_core(C4, chain2):
    assert C4.beat_points() == frozenset()
    cone = C4.subposet({"a", "c", "d"})
    assert cone.beat_points() == {"c", "d"}
    assert chain2.beat_points() == {"0", "1"}
    assert len(cone.core()) == 1 and cone.is_contractible()
    assert C4.core() == C4 and not C4.is_contractible()


def test_core_of_empty_poset():
    with pytest.raises(PosetError):
        Poset.from_covers([], [], allow_empty=True).core()


def test_monotone_maps_small(chain2, singleton, C4):
    maps = monotone_maps(chain2, chain2)
    assert maps == [{"0": "0", "1": "0"}, {"0": "0", "1": "1"}, {"0": "1", "1": "1"}]
    assert len(monotone_maps(singleton, singleton)) == 1
    assert {"a": "b", "b": "a", "c": "d", "d": "c"} in monotone_maps(C4, C4)


def test_monotone_maps_budget(C4):
    with pytest.raises(BudgetExhausted) as info:
        monotone_maps(C4, C4, budget=3)
    assert info.value.examined == 3
    assert isinstance(info.value.partial, list)


def test_iter_posets_counts():
    # unlabelled posets on n points
    assert [sum(1 for _ in iter_posets(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


@given(random_posets())
def test_min_open_is_opposite_closure(X):
    Xop = X.opposite()
    for x in X.elements:
        assert X.min_open(x) == Xop.closure(x)


@given(random_posets())
def test_covers_regenerate_order(X):
    Y = Poset.from_covers(X.elements, X.covers)
    assert Y.relation() == X.relation()


@given(random_posets())
def test_order_axioms(X):
    R = X.relation()
    els = X.elements
    assert all((x, x) in R for x in els)
    assert not any((x, y) in R and (y, x) in R for x, y in itertools.permutations(els, 2))
    assert all((x, z) in R for (x, y) in R for (y2, z) in R if y == y2)


@given(random_posets(max_size=6))
@settings(max_examples=40, deadline=None)
def test_core_preserves_homology(X):
    C = X.core()
    assert C.beat_points() == frozenset()
    top = max(len(homology(C).betti), len(homology(X).betti))
    assert [homology(C).betti_at(n) for n in range(top)] == [homology(X).betti_at(n) for n in range(top)]
    assert not any(homology(C).torsion) and not any(homology(X).torsion)


def test_monotone_maps_match_brute_force():
    for X in posets_upto(4):
        for Y in posets_upto(3):
            expected = [f for f in all_maps(X, Y) if all(Y.leq(f[a], f[b]) for a, b in X.relation())]
            got = monotone_maps(X, Y)
            assert sorted(map(sorted_items, got)) == sorted(map(sorted_items, expected))
            assert all(is_monotone(X, Y, f) for f in got)


def sorted_items(f):
    return tuple(sorted(f.items()))
