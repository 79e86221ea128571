"""JSON workspace documents: one poset plus named multimaps and functions."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import jsonschema

from .multimap import MultiMap
from .poset import Poset, PosetError

__all__ = ["DocumentError", "SCHEMA", "WorkspaceDocument", "parse", "serialize"]

_ident = {"type": "string", "minLength": 1}

SCHEMA = {
    "type": "object",
    "required": ["poset"],
    "additionalProperties": False,
    "properties": {
        "description": {"type": "string"},
        "poset": {
            "type": "object",
            "required": ["elements", "covers"],
            "additionalProperties": False,
            "properties": {
                "elements": {"type": "array", "items": _ident, "uniqueItems": True},
                "covers": {
                    "type": "array",
                    "items": {"type": "array", "items": _ident, "minItems": 2, "maxItems": 2},
                },
            },
        },
        "maps": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "array", "items": _ident, "minItems": 1},
            },
        },
        "functions": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _ident},
        },
    },
}


class DocumentError(ValueError):
    """Malformed workspace document; ``field`` is a dotted path, ``line`` 1-based."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(field)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def _field_path(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


@dataclass
class WorkspaceDocument:
    elements: tuple
    covers: tuple
    maps: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    description: str = ""

    def __post_init__(self):
        self.elements = tuple(self.elements)
        self.covers = tuple(tuple(c) for c in self.covers)
        self.maps = {k: {x: tuple(v) for x, v in m.items()} for k, m in self.maps.items()}
        self.functions = {k: dict(f) for k, f in self.functions.items()}
        self._check()

    def __eq__(self, other):
        if not isinstance(other, WorkspaceDocument):
            return NotImplemented
        return self.to_json() == other.to_json()

    def _check(self):
        known = set(self.elements)
        for k, (lo, hi) in enumerate(self.covers):
            for v in (lo, hi):
                if v not in known:
                    raise DocumentError(f"unknown element {v!r}", f"poset.covers[{k}]")
        try:
            self.poset
        except PosetError as exc:
            raise DocumentError(str(exc), "poset.covers") from exc
        for name, values in self.maps.items():
            for x, v in values.items():
                if x not in known:
                    raise DocumentError(f"unknown element {x!r}", f"maps.{name}")
                if not v:
                    raise DocumentError(f"empty value at {x!r}", f"maps.{name}.{x}")
                for y in v:
                    if y not in known:
                        raise DocumentError(f"unknown element {y!r}", f"maps.{name}.{x}")
            missing = [x for x in self.elements if x not in values]
            if missing:
                raise DocumentError(f"no value at {missing[0]!r}", f"maps.{name}")
        for name, f in self.functions.items():
            for x, y in f.items():
                if x not in known or y not in known:
                    raise DocumentError(f"unknown element {x if x not in known else y!r}", f"functions.{name}")
            missing = [x for x in self.elements if x not in f]
            if missing:
                raise DocumentError(f"no value at {missing[0]!r}", f"functions.{name}")

    @cached_property
    def poset(self) -> Poset:
        return Poset.from_covers(self.elements, self.covers, allow_empty=True)

    def multimap(self, name: str) -> MultiMap:
        if name not in self.maps:
            raise DocumentError(f"unknown map {name!r}; available: {', '.join(self.maps) or 'none'}", "maps")
        X = self.poset
        return MultiMap(X, X, self.maps[name])

    def function(self, name: str) -> dict:
        if name not in self.functions:
            raise DocumentError(f"unknown function {name!r}; available: {', '.join(self.functions) or 'none'}",
                                "functions")
        return dict(self.functions[name])

    def to_json(self) -> dict:
        out = {}
        if self.description:
            out["description"] = self.description
        out["poset"] = {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}
        if self.maps:
            out["maps"] = {k: {x: list(v) for x, v in m.items()} for k, m in self.maps.items()}
        if self.functions:
            out["functions"] = {k: dict(f) for k, f in self.functions.items()}
        return out


def parse(text: str) -> WorkspaceDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno) from exc
    e = jsonschema.exceptions.best_match(jsonschema.Draft7Validator(SCHEMA).iter_errors(data))
    if e is not None:
        raise DocumentError(e.message, _field_path(e.absolute_path) or "<root>")
    return WorkspaceDocument(
        elements=data["poset"]["elements"],
        covers=data["poset"]["covers"],
        maps=data.get("maps", {}),
        functions=data.get("functions", {}),
        description=data.get("description", ""),
    )


def serialize(doc: WorkspaceDocument) -> str:
    return json.dumps(doc.to_json(), indent=2, ensure_ascii=False) + "\n"
