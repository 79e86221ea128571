"""Multivalued maps between finite T0 spaces and their semicontinuity."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from .homology import is_acyclic
from .poset import BudgetExhausted, Poset, PosetError, _monotone_search, is_monotone, iter_bits, product

__all__ = [
    "AcyclicValues",
    "MapGraph",
    "MultiMap",
    "PreconditionError",
    "SemicontinuityReport",
    "acyclic_mask",
    "classify",
    "complement_upset_map",
    "compose_sandwich",
    "from_function",
    "graph",
    "has_acyclic_values",
    "large_preimage",
    "opposite_map",
    "primed_map",
    "selectors",
    "small_preimage",
]


class PreconditionError(ValueError):
    """A map does not satisfy the hypotheses an operation needs."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}; witness: {witness!r}")
        self.witness = witness


class MultiMap:
    """An assignment ``x -> F(x)`` of subsets of ``codomain`` to points of ``domain``."""

    def __init__(self, domain: Poset, codomain: Poset, values: Mapping, *, allow_empty: bool = False):
        missing = [x for x in domain.elements if x not in values]
        if missing:
            raise PosetError(f"no value given for {missing[0]!r}")
        extra = [x for x in values if x not in domain]
        if extra:
            raise PosetError(f"unknown element {extra[0]!r} in map domain")
        masks = tuple(codomain.to_mask(values[x]) for x in domain.elements)
        self._init(domain, codomain, masks, allow_empty)

    @classmethod
    def from_masks(cls, domain: Poset, codomain: Poset, masks, *, allow_empty: bool = False) -> "MultiMap":
        self = cls.__new__(cls)
        self._init(domain, codomain, tuple(masks), allow_empty)
        return self

    def _init(self, domain, codomain, masks, allow_empty):
        if not allow_empty:
            for x, m in zip(domain.elements, masks):
                if not m:
                    raise PosetError(f"empty value at {x!r}")
        self.domain = domain
        self.codomain = codomain
        self.masks = masks

    def __call__(self, x) -> frozenset:
        return self.codomain.from_mask(self.masks[self.domain.pos(x)])

    def items(self):
        for x, m in zip(self.domain.elements, self.masks):
            yield x, self.codomain.from_mask(m)

    def as_dict(self) -> dict:
        """Values as lists in the codomain's element order."""
        return {
            x: [self.codomain.elements[j] for j in iter_bits(m)]
            for x, m in zip(self.domain.elements, self.masks)
        }

    def __eq__(self, other):
        if not isinstance(other, MultiMap):
            return NotImplemented
        return (self.domain, self.codomain, self.masks) == (other.domain, other.codomain, other.masks)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.masks))

    def __le__(self, other: "MultiMap") -> bool:
        """Pointwise inclusion of values."""
        return all(a & ~b == 0 for a, b in zip(self.masks, other.masks))

    def __ge__(self, other: "MultiMap") -> bool:
        return other <= self

    def __repr__(self):
        body = ", ".join(f"{x}: {{{','.join(map(str, v))}}}" for x, v in self.as_dict().items())
        return f"MultiMap({body})"

    def is_self_map(self) -> bool:
        return self.domain == self.codomain


def small_preimage(F: MultiMap, B) -> frozenset:
    """``{x : F(x) is contained in B}``."""
    b = F.codomain.to_mask(B)
    return F.domain.from_mask(sum(1 << i for i, m in enumerate(F.masks) if m & ~b == 0))


def large_preimage(F: MultiMap, B) -> frozenset:
    """``{x : F(x) meets B}``."""
    b = F.codomain.to_mask(B)
    return F.domain.from_mask(sum(1 << i for i, m in enumerate(F.masks) if m & b))


# -- semicontinuity -------------------------------------------------------


@dataclass
class SemicontinuityReport:
    usc: bool
    lsc: bool
    susc: bool
    slsc: bool
    witnesses: dict = field(default_factory=dict)
    characterizations: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"usc": self.usc, "lsc": self.lsc, "susc": self.susc, "slsc": self.slsc,
               "witnesses": {k: list(v) for k, v in self.witnesses.items()}}
        if self.characterizations:
            out["characterizations"] = dict(self.characterizations)
        return out


def _pairs_leq(X: Poset):
    """Position pairs (i, j) with x_i <= x_j, lexicographic."""
    for i in range(len(X)):
        for j in iter_bits(X.up_mask(i)):
            yield i, j


def _down_sets(Y: Poset):
    for b in range(1 << len(Y)):
        if Y.is_down_set(b):
            yield b


def _all_subsets(Y: Poset):
    return range(1 << len(Y))


def _usc_witness(F: MultiMap):
    X, Y, m = F.domain, F.codomain, F.masks
    for i, j in _pairs_leq(X):
        for y in iter_bits(m[i]):
            if not Y.up_mask(y) & m[j]:
                return X.elements[i], X.elements[j], Y.elements[y]
    return None


def _lsc_witness(F: MultiMap):
    X, Y, m = F.domain, F.codomain, F.masks
    for i in range(len(X)):
        for j in iter_bits(X.down_mask(i)):  # x_i >= x_j
            for y in iter_bits(m[i]):
                if not Y.down_mask(y) & m[j]:
                    return X.elements[i], X.elements[j], Y.elements[y]
    return None


def _inclusion_witness(F: MultiMap, reverse: bool):
    X, Y, m = F.domain, F.codomain, F.masks
    for i, j in _pairs_leq(X):
        diff = (m[j] & ~m[i]) if reverse else (m[i] & ~m[j])
        if diff:
            return X.elements[i], X.elements[j], Y.elements[(diff & -diff).bit_length() - 1]
    return None


def _characterizations(F: MultiMap) -> dict:
    X, Y, m = F.domain, F.codomain, F.masks
    n = len(X)

    def image(mask):
        out = 0
        for i in iter_bits(mask):
            out |= m[i]
        return out

    def small(b):
        return sum(1 << i for i in range(n) if m[i] & ~b == 0)

    def large(b):
        return sum(1 << i for i in range(n) if m[i] & b)

    opens = list(_down_sets(Y))
    pairs = list(_pairs_leq(X))
    c = {}
    c["u_a"] = all(X.is_down_set(small(b)) for b in opens)
    c["u_b"] = all(image(X.down_mask(i)) & ~Y.down_of_mask(m[i]) == 0 for i in range(n))
    c["u_c"] = all(m[i] & ~Y.down_of_mask(m[j]) == 0 for i, j in pairs)
    c["u_d"] = all(
        any(Y.leq(Y.elements[y1], Y.elements[y2]) for y2 in iter_bits(m[j]))
        for i, j in pairs for y1 in iter_bits(m[i])
    )
    c["l_a"] = all(X.is_down_set(large(b)) for b in opens)
    c["l_b"] = all(image(X.up_mask(i)) & ~Y.up_of_mask(m[i]) == 0 for i in range(n))
    c["l_c"] = all(m[j] & ~Y.up_of_mask(m[i]) == 0 for i, j in pairs)  # x_j >= x_i
    c["l_d"] = all(
        any(Y.leq(Y.elements[y2], Y.elements[y1]) for y2 in iter_bits(m[i]))
        for i, j in pairs for y1 in iter_bits(m[j])
    )
    if len(Y) <= 12:
        c["susc_def"] = all(X.is_down_set(small(b)) for b in _all_subsets(Y))
        c["slsc_def"] = all(X.is_down_set(large(b)) for b in _all_subsets(Y))
    return c


def classify(F: MultiMap, verify: bool = False) -> SemicontinuityReport:
    """Decide usc, lsc, susc and slsc.

    Normal mode uses the pointwise criteria.  With ``verify=True`` every
    characterization is evaluated as well and disagreement raises
    ``AssertionError``.
    """
    w_usc = _usc_witness(F)
    w_lsc = _lsc_witness(F)
    w_susc = _inclusion_witness(F, reverse=False)
    w_slsc = _inclusion_witness(F, reverse=True)
    report = SemicontinuityReport(w_usc is None, w_lsc is None, w_susc is None, w_slsc is None)
    for name, w in (("usc", w_usc), ("lsc", w_lsc), ("susc", w_susc), ("slsc", w_slsc)):
        if w is not None:
            report.witnesses[name] = w
    if verify:
        c = _characterizations(F)
        report.characterizations = c
        groups = {"usc": ["u_a", "u_b", "u_c", "u_d"], "lsc": ["l_a", "l_b", "l_c", "l_d"],
                  "susc": ["susc_def"], "slsc": ["slsc_def"]}
        for flag, names in groups.items():
            expected = getattr(report, flag)
            for name in names:
                if name in c and c[name] != expected:
                    raise AssertionError(f"characterization {name} disagrees with {flag}={expected} for {F!r}")
    return report


# -- acyclicity -----------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def acyclic_mask(Y: Poset, mask: int) -> bool:
    """Whether the subspace of ``Y`` on ``mask`` is acyclic (memoized)."""
    if not mask:
        return False
    return is_acyclic(Y.subposet_mask(mask))


@dataclass
class AcyclicValues:
    ok: bool
    per_element: dict  # element -> "acyclic" | "not acyclic" | "empty"

    def __bool__(self) -> bool:
        return self.ok


def has_acyclic_values(F: MultiMap) -> AcyclicValues:
    per = {}
    for x, m in zip(F.domain.elements, F.masks):
        if not m:
            per[x] = "empty"
        else:
            per[x] = "acyclic" if acyclic_mask(F.codomain, m) else "not acyclic"
    return AcyclicValues(all(v == "acyclic" for v in per.values()), per)


# -- graphs, selectors and constructions ----------------------------------


@dataclass(frozen=True)
class MapGraph:
    """The subspace of pairs ``(x, y)`` with ``y`` in ``F(x)``."""

    poset: Poset
    p1: dict
    p2: dict


def graph(F: MultiMap) -> MapGraph:
    P = product(F.domain, F.codomain)
    k = len(F.codomain)
    mask = 0
    for i, m in enumerate(F.masks):
        mask |= m << (i * k)
    G = P.subposet_mask(mask)
    return MapGraph(G, {z: z[0] for z in G.elements}, {z: z[1] for z in G.elements})


def from_function(X: Poset, f: Mapping) -> MultiMap:
    """``x -> U_{f(x)}`` for an order-preserving self-map ``f``."""
    if not is_monotone(X, X, f):
        raise PreconditionError("map is not order-preserving")
    return MultiMap.from_masks(X, X, [X.down_mask(X.pos(f[x])) for x in X.elements])


def selectors(F: MultiMap, budget: int | None = None) -> list[dict]:
    """All continuous selectors of ``F`` in a deterministic order."""
    X, Y = F.domain, F.codomain
    out = []
    try:
        for img in _monotone_search(X, Y, list(F.masks), budget):
            out.append({X.elements[i]: Y.elements[t] for i, t in enumerate(img)})
    except BudgetExhausted as exc:
        exc.partial = out
        raise
    return out


def opposite_map(F: MultiMap) -> MultiMap:
    """The same values viewed as a map ``X^op -> Y^op``."""
    return MultiMap.from_masks(F.domain.opposite(), F.codomain.opposite(), F.masks, allow_empty=True)


def primed_map(F: MultiMap) -> MultiMap:
    """The same values viewed as a map ``X^op -> Y``."""
    return MultiMap.from_masks(F.domain.opposite(), F.codomain, F.masks, allow_empty=True)


def compose_sandwich(i: Mapping, F: MultiMap, r: Mapping, Y: Poset) -> MultiMap:
    """``y -> i(F(r(y)))`` for ``i: X -> Y`` and ``r: Y -> X``."""
    X = F.domain
    if not F.is_self_map():
        raise PreconditionError("sandwich composition needs a self-map")
    if not is_monotone(X, Y, i) or not is_monotone(Y, X, r):
        raise PreconditionError("i and r must be order-preserving")
    values = {y: {i[z] for z in F(r[y])} for y in Y.elements}
    return MultiMap(Y, Y, values)


def complement_upset_map(X: Poset) -> MultiMap:
    """``x -> {y : not y >= x}``."""
    masks = [X.full_mask & ~X.up_mask(i) for i in range(len(X))]
    for x, m in zip(X.elements, masks):
        if not m:
            raise PreconditionError("complement of an up-set is empty", witness=x)
    return MultiMap.from_masks(X, X, masks)
