"""Built-in workspace documents for the worked examples."""
from __future__ import annotations

from .document import DocumentError, WorkspaceDocument
from .homology import homology
from .multimap import complement_upset_map

__all__ = ["FIXTURES", "fixture", "fixture_names", "validate_sphere"]

_C4 = {"elements": ["a", "b", "c", "d"], "covers": [["c", "a"], ["c", "b"], ["d", "a"], ["d", "b"]]}

_CORONA = {
    "elements": ["a", "b", "c", "a'", "b'", "c'"],
    "covers": [["a'", "a"], ["c'", "a"], ["a'", "b"], ["b'", "b"], ["b'", "c"], ["c'", "c"]],
}
_CORONA_F = {
    "a": ["a", "b", "a'", "b'", "c'"],
    "b": ["c", "b'", "c'"],
    "c": ["a", "a'", "c'"],
    "a'": ["b'"],
    "b'": ["c'"],
    "c'": ["a'"],
}
_CORONA_G = {**_CORONA_F, "a": ["b", "a'", "b'"]}

# Two suspensions of S^0 stacked: three levels of two incomparable points.
_SPHERE6 = {
    "elements": ["x1", "x2", "y1", "y2", "z1", "z2"],
    "covers": [[lo, hi] for a, b in (("x", "y"), ("y", "z")) for lo in (a + "1", a + "2") for hi in (b + "1", b + "2")],
}

# Ten points: three maximal (a, b, c), four middle, three minimal (p, q, r).
# a covers two points and is the only maximal element doing so.
_SPHERE10 = {
    "elements": list("abcefghpqr"),
    "covers": [
        ["e", "a"], ["f", "a"],
        ["e", "b"], ["g", "b"], ["h", "b"],
        ["f", "c"], ["g", "c"], ["h", "c"],
        ["p", "e"], ["q", "e"],
        ["p", "f"], ["q", "f"],
        ["p", "g"], ["r", "g"],
        ["q", "h"], ["r", "h"],
    ],
}


def _complement_values(poset: dict) -> dict:
    doc = WorkspaceDocument(poset["elements"], poset["covers"])
    return {x: list(v) for x, v in complement_upset_map(doc.poset).as_dict().items()}


FIXTURES = {
    "circle4": {
        "description": "Four-point model of the circle.",
        "poset": _C4,
        "functions": {"swap": {"a": "b", "b": "a", "c": "d", "d": "c"}},
    },
    "example-s1-F": {
        "description": "A susc map on the circle model with Lefschetz number 2.",
        "poset": _C4,
        "maps": {"F": {"a": ["a", "b", "c"], "b": ["a", "b", "d"], "c": ["a"], "d": ["b"]}},
    },
    "example-L1": {
        "description": "Lefschetz number 1 with a two-point discrete fixed point set.",
        "poset": _C4,
        "maps": {"F": {"a": ["a", "b", "c"], "b": ["a", "b", "c"], "c": ["a"], "d": ["b"]}},
    },
    "corona": {
        "description": "Six-point crown with a susc map whose only continuous selector is fixed-point free.",
        "poset": _CORONA,
        "maps": {"F": _CORONA_F},
        "functions": {"selector": {"a": "b", "b": "c", "c": "a", "a'": "b'", "b'": "c'", "c'": "a'"}},
    },
    "corona-G": {
        "description": "The crown map F and a smaller fixed-point-free map G <= F.",
        "poset": _CORONA,
        "maps": {"F": _CORONA_F, "G": _CORONA_G},
    },
    "prop7": {
        "description": "usc and lsc, neither strongly, with selectors of different Lefschetz numbers.",
        "poset": _C4,
        "maps": {"F": {"a": ["a", "b", "c"], "b": ["a", "b", "c"], "c": ["a", "c", "d"], "d": ["a", "c", "d"]}},
        "functions": {"identity": {x: x for x in "abcd"}, "fold": {"a": "a", "b": "a", "c": "c", "d": "c"}},
    },
    "sphere6": {
        "description": "Six-point model of the 2-sphere.",
        "poset": _SPHERE6,
        "maps": {"complement": _complement_values(_SPHERE6)},
        "functions": {"swap": {"x1": "x2", "x2": "x1", "y1": "y2", "y2": "y1", "z1": "z2", "z2": "z1"}},
    },
    "sphere-fig3": {
        "description": "Ten-point 2-sphere with the FPP but not the MFPP.",
        "poset": _SPHERE10,
        "maps": {"complement": _complement_values(_SPHERE10)},
    },
    "chain2": {
        "description": "Two-element chain.",
        "poset": {"elements": ["0", "1"], "covers": [["0", "1"]]},
    },
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def validate_sphere(doc: WorkspaceDocument) -> None:
    """Reject a transcription that lacks the properties the ten-point sphere must have."""
    X = doc.poset
    if not 10 <= len(X) <= 12:
        raise DocumentError(f"expected 10 to 12 points, got {len(X)}", "poset.elements")
    if homology(X).betti != (1, 0, 1) or any(homology(X).torsion):
        raise DocumentError(f"expected the homology of S^2, got {homology(X)}", "poset")
    two = [x for x in X.maximal() if bin(X.lower_cover_mask(X.pos(x))).count("1") == 2]
    if len(two) != 1:
        raise DocumentError(f"expected one maximal point covering two points, got {two}", "poset")
    for x, value in complement_upset_map(X).items():
        if not X.subposet(value).is_contractible():
            raise DocumentError(f"complement of the up-set of {x!r} is not contractible", "poset")


_VALIDATORS = {"sphere-fig3": validate_sphere}


def fixture(name: str) -> WorkspaceDocument:
    if name not in FIXTURES:
        raise DocumentError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    data = FIXTURES[name]
    doc = WorkspaceDocument(
        elements=data["poset"]["elements"],
        covers=data["poset"]["covers"],
        maps=data.get("maps", {}),
        functions=data.get("functions", {}),
        description=data.get("description", ""),
    )
    if name in _VALIDATORS:
        _VALIDATORS[name](doc)
    return doc
