import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_posets
from finlef.document import DocumentError, WorkspaceDocument, parse, serialize
from finlef.fixtures import FIXTURES, fixture, validate_sphere
from finlef.multimap import classify

C4_DOC = {
    "poset": {"elements": ["a", "b", "c", "d"], "covers": [["c", "a"], ["c", "b"], ["d", "a"], ["d", "b"]]},
    "maps": {"F": {"a": ["a", "b", "c"], "b": ["a", "b", "d"], "c": ["a"], "d": ["b"]}},
}


def test_parse_and_classify():
    doc = parse(json.dumps(C4_DOC))
    assert classify(doc.multimap("F")).susc


@pytest.mark.parametrize("name", list(FIXTURES))
def test_fixture_round_trip(name):
    doc = fixture(name)
    text = serialize(doc)
    again = parse(text)
    assert again == doc
    assert serialize(again) == text


@given(random_posets(max_size=5), st.data())
def test_round_trip_random(X, data):
    maps = {}
    for k in range(data.draw(st.integers(0, 2))):
        maps[f"M{k}"] = {x: sorted(X.from_mask(data.draw(st.integers(1, X.full_mask)))) for x in X.elements}
    doc = WorkspaceDocument(X.elements, X.covers, maps)
    assert parse(serialize(doc)) == doc
    assert parse(serialize(doc)).poset == X


def test_element_order_is_preserved():
    doc = parse(json.dumps({"poset": {"elements": ["z", "a"], "covers": [["z", "a"]]}}))
    assert doc.poset.elements == ("z", "a")


def test_cycle_is_reported():
    bad = {"poset": {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}}
    with pytest.raises(DocumentError, match="cycle") as info:
        parse(json.dumps(bad))
    assert info.value.field == "poset.covers"


def test_syntax_error_has_line():
    with pytest.raises(DocumentError) as info:
        parse('{\n  "poset": {\n    "elements": [,]\n  }\n}')
    assert info.value.line == 3


@pytest.mark.parametrize(
    "patch, field",
    [
        ({"poset": {"elements": ["a"], "covers": [["a"]]}}, "poset.covers[0]"),
        ({"poset": {"elements": ["a", "a"], "covers": []}}, "poset.elements"),
        ({"poset": {"elements": ["a"], "covers": []}, "extra": 1}, "<root>"),
        ({"poset": {"elements": ["a"], "covers": []}, "maps": {"F": {"a": []}}}, "maps.F.a"),
    ],
)
def test_schema_errors_name_the_field(patch, field):
    with pytest.raises(DocumentError) as info:
        parse(json.dumps(patch))
    assert info.value.field == field


def test_unknown_identifiers():
    base = json.loads(json.dumps(C4_DOC))
    base["poset"]["covers"].append(["c", "z"])
    with pytest.raises(DocumentError, match="unknown element 'z'"):
        parse(json.dumps(base))
    base = json.loads(json.dumps(C4_DOC))
    base["maps"]["F"]["a"] = ["q"]
    with pytest.raises(DocumentError, match="unknown element 'q'") as info:
        parse(json.dumps(base))
    assert info.value.field == "maps.F.a"
    base = json.loads(json.dumps(C4_DOC))
    del base["maps"]["F"]["d"]
    with pytest.raises(DocumentError, match="no value at 'd'"):
        parse(json.dumps(base))


def test_unknown_map_and_fixture():
    doc = parse(json.dumps(C4_DOC))
    with pytest.raises(DocumentError, match="available: F"):
        doc.multimap("G")
    with pytest.raises(DocumentError, match="circle4"):
        fixture("nope")


def test_fixture_contents():
    assert fixture("circle4").poset.covers == (("c", "a"), ("c", "b"), ("d", "a"), ("d", "b"))
    corona = fixture("corona")
    assert len(corona.poset) == 6 and classify(corona.multimap("F")).susc
    assert fixture("chain2").poset.covers == (("0", "1"),)


def test_sphere_validation_rejects_bad_transcription():
    doc = fixture("sphere6")
    with pytest.raises(DocumentError, match="10 to 12"):
        validate_sphere(doc)
    good = fixture("sphere-fig3")
    covers = [c for c in good.covers if c != ("e", "a")]
    with pytest.raises(DocumentError):
        validate_sphere(WorkspaceDocument(good.elements, covers))
