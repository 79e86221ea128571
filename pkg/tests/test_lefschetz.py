import pytest

from conftest import posets_upto
from finlef.dynamics import enumerate_susc_acyclic
from finlef.fixtures import fixture
from finlef.homology import SimplicialComplex, homology, induced_on_free_quotient, order_complex, simplicial_map
from finlef.lefschetz import (
    AcyclicCarrier,
    carrier_chain_map,
    carrier_phi,
    induced_map,
    lefschetz_number,
    lefschetz_of_chain_map,
    lefschetz_single,
    require_strong,
)
from finlef.multimap import MultiMap, PreconditionError, classify, from_function, graph, opposite_map, selectors
from finlef.poset import monotone_maps


def test_carrier_values(example_F):
    phi = carrier_phi(example_F)
    assert phi(("c",)).f_vector() == (1,)
    assert phi(("c",)).vertices == ("a",)
    value = phi(("a", "c"))
    assert value.f_vector() == (3, 2) and set(value.simplices[1]) == {("a", "c"), ("b", "c")}
    assert phi(("c",)).is_subcomplex_of(phi(("a", "c")))
    phi.check()


def test_carrier_chain_map(example_F):
    phi = carrier_phi(example_F)
    for pick in (min, max):
        cm = carrier_chain_map(phi, pick=pick)
        assert cm.is_chain_map() and cm.preserves_augmentation()
        assert phi.carries(cm)
        assert lefschetz_of_chain_map(cm) == 2


def test_constant_point_carrier(C4):
    K = order_complex(C4)
    point = SimplicialComplex(C4.elements, [("a",)])
    phi = AcyclicCarrier(K, K, lambda s: point)
    cm = carrier_chain_map(phi)
    assert all(cm.images[(v,)] == {("a",): 1} for v in C4.elements)
    assert not any(cm.images.get(s) for s in K.simplices[1])


def test_carrier_rejects_non_acyclic_values(C4):
    K = order_complex(C4)
    with pytest.raises(PreconditionError, match="acyclic"):
        AcyclicCarrier(K, K, lambda s: K)


def test_simplicial_map_is_carried_by_its_carrier():
    for X in posets_upto(4):
        for f in monotone_maps(X, X):
            phi = carrier_phi(from_function(X, f))
            Kf = simplicial_map(f, X, X)
            assert phi.carries(Kf)
            assert lefschetz_of_chain_map(carrier_chain_map(phi)) == Kf.hopf_trace() == lefschetz_single(f, X)


def test_induced_map_examples(C4, example_F):
    m = induced_map(example_F)
    assert m.as_lists() == [[[1]], [[-1]]]
    assert m.lefschetz == 2
    ident = from_function(C4, {x: x for x in C4.elements})
    assert induced_map(ident).as_lists() == [[[1]], [[1]]]


def test_induced_map_inverts_a_homology_equivalence(example_F):
    g = graph(example_F)
    G, X = g.poset, example_F.domain
    back = MultiMap(X, G, {x: [z for z in G.elements if X.leq(g.p1[z], x)] for x in X.elements})
    back_star = induced_map(back).matrices
    p1_star = induced_on_free_quotient(simplicial_map(g.p1, G, X), homology(G), homology(X))
    for a, b in zip(back_star, p1_star):
        assert a.dot(b).tolist() == [[int(i == j) for j in range(a.shape[0])] for i in range(a.shape[0])]


def test_lefschetz_examples(C4, example_F):
    assert lefschetz_number(example_F, via="both") == 2
    assert lefschetz_number(fixture("example-L1").multimap("F"), via="both") == 1
    assert lefschetz_single({x: x for x in C4.elements}, C4) == 0
    corona = fixture("corona")
    assert lefschetz_number(corona.multimap("F"), via="both") == 0
    assert lefschetz_single(corona.function("selector"), corona.poset) == 0


def test_require_strong(C4):
    with pytest.raises(PreconditionError, match="neither"):
        require_strong(fixture("prop7").multimap("F"))
    whole = MultiMap(C4, C4, {x: C4.elements for x in C4.elements})
    with pytest.raises(PreconditionError, match="not acyclic"):
        require_strong(whole)


def slsc_maps(X):
    for F in enumerate_susc_acyclic(X.opposite()):
        yield MultiMap.from_masks(X, X, F.masks)


def test_slsc_routes_agree():
    for X in posets_upto(3):
        for F in slsc_maps(X):
            assert classify(F).slsc
            primed = induced_map(F, route="primed")
            via_opposite = induced_map(opposite_map(F), route="graph")
            assert primed.as_lists() == via_opposite.as_lists()
            assert lefschetz_number(F, via="both") == primed.lefschetz
            if classify(F).susc:
                assert induced_map(F, route="graph") == primed


def test_selector_consistency():
    for X in posets_upto(3):
        for F in enumerate_susc_acyclic(X):
            L = lefschetz_number(F)
            for f in selectors(F):
                assert lefschetz_single(f, X) == L
    corona = fixture("corona").multimap("F")
    assert [lefschetz_single(f, corona.domain) for f in selectors(corona)] == [0]


def test_degree_zero_is_identity_on_connected_spaces():
    for X in posets_upto(3):
        if homology(X).betti[0] != 1:
            continue
        for F in enumerate_susc_acyclic(X):
            assert induced_map(F).as_lists()[0] == [[1]]
