"""Fixed points, the (multivalued) fixed point property and homotopy fences."""
from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from .homology import is_rationally_acyclic
from .lefschetz import induced_map, lefschetz_number, lefschetz_single, require_strong
from .multimap import (
    MultiMap,
    PreconditionError,
    acyclic_mask,
    classify,
    has_acyclic_values,
    selectors,
)
from .poset import BudgetExhausted, Poset, _monotone_search, iter_bits

__all__ = [
    "AuditReport",
    "Fence",
    "FixedPointCertificate",
    "HomotopyResult",
    "TheoremViolation",
    "Verdict",
    "are_homotopic",
    "automorphisms",
    "certify",
    "enumerate_susc_acyclic",
    "fence_neighbors",
    "fixed_points",
    "fpp_fast_path",
    "has_fpp",
    "has_mfpp",
    "homotopy_class",
    "homotopy_invariance_check",
    "implication_audit",
    "orbit_fixed_point",
    "prop7_counterexample",
]


class TheoremViolation(AssertionError):
    """A computed result contradicts a theorem; the implementation is wrong."""


def fixed_points(F: MultiMap) -> frozenset:
    """``{x : x in F(x)}``."""
    X = F.domain
    return frozenset(x for i, x in enumerate(X.elements) if (F.masks[i] >> F.codomain.pos(x)) & 1)


@dataclass(frozen=True)
class FixedPointCertificate:
    lefschetz: int
    fixed_points: frozenset
    method: str

    @property
    def certified(self) -> bool:
        return self.lefschetz != 0


def certify(F: MultiMap, method: str = "homology") -> FixedPointCertificate:
    """Compute ``L(F)`` and the fixed points; ``L != 0`` forces a fixed point."""
    require_strong(F)
    via = {"homology": "homology", "carrier": "carrier", "both": "both"}[method]
    L = lefschetz_number(F, via=via)
    fixed = fixed_points(F)
    if L != 0 and not fixed:
        raise TheoremViolation(f"L(F) = {L} but {F!r} has no fixed point")
    return FixedPointCertificate(L, fixed, method)


def orbit_fixed_point(X: Poset, f: Mapping, x):
    """Follow ``x <= f(x) <= f(f(x)) <= ...`` to a fixed point of ``f``."""
    if not X.leq(x, f[x]):
        raise PreconditionError("x is not below f(x)", witness=x)
    while f[x] != x:
        x = f[x]
    return x


# -- enumeration ------------------------------------------------------------


class _Counter:
    def __init__(self, budget: int | None, what: str):
        if budget is not None and budget <= 0:
            raise ValueError("budget must be positive")
        self.budget = budget
        self.what = what
        self.examined = 0

    def tick(self):
        self.examined += 1
        if self.budget is not None and self.examined > self.budget:
            raise BudgetExhausted(self.what, self.examined - 1)


def _susc_search(X: Poset, Y: Poset, lower, upper, counter: _Counter) -> Iterator[tuple]:
    """Value masks of susc acyclic-valued maps with ``lower <= F <= upper``.

    Walks a linear extension of ``X``; each value must contain the values at
    the lower covers.  Candidate values are taken in increasing mask order.
    """
    order = X.linear_extension
    n = len(order)
    vals = [0] * len(X)

    def rec(k):
        if k == n:
            yield tuple(vals)
            return
        i = order[k]
        req = lower[i]
        for c in iter_bits(X.lower_cover_mask(i)):
            req |= vals[c]
        if req & ~upper[i]:
            return
        free = upper[i] & ~req
        sub = 0
        while True:
            m = req | sub
            counter.tick()
            if m and acyclic_mask(Y, m):
                vals[i] = m
                yield from rec(k + 1)
            if sub == free:
                break
            sub = (sub - free) & free
        vals[i] = 0

    yield from rec(0)


def enumerate_susc_acyclic(X: Poset, budget: int | None = None) -> Iterator[MultiMap]:
    """Every susc self-map of ``X`` with acyclic values, deterministically ordered.

    Raises ``BudgetExhausted`` mid-stream when the budget runs out.
    """
    counter = _Counter(budget, "susc acyclic map enumeration")
    n = len(X)
    for masks in _susc_search(X, X, [0] * n, [X.full_mask] * n, counter):
        yield MultiMap.from_masks(X, X, masks)


@dataclass
class Verdict:
    """Outcome of a brute-force property check; ``value`` is None when unknown."""

    value: bool | None
    witness: object = None
    examined: int = 0
    method: str = "enumeration"

    def as_dict(self) -> dict:
        w = self.witness
        if isinstance(w, MultiMap):
            w = w.as_dict()
        return {"value": self.value, "witness": w, "examined": self.examined, "method": self.method}


def automorphisms(X: Poset) -> list[dict]:
    """All order automorphisms (bijective monotone self-maps) of ``X``."""
    out = []
    order = X.linear_extension
    image = [None] * len(X)

    def rec(k, used):
        if k == len(order):
            out.append({X.elements[i]: X.elements[t] for i, t in enumerate(image)})
            return
        i = order[k]
        cand = X.full_mask & ~used
        for c in iter_bits(X.lower_cover_mask(i)):
            cand &= X.up_mask(image[c])
        for t in iter_bits(cand):
            image[i] = t
            rec(k + 1, used | 1 << t)
        image[i] = None

    rec(0, 0)
    return out


def fpp_fast_path(X: Poset) -> bool | None:
    """Sufficient test for the FPP without enumerating all self-maps.

    If every punctured space ``X - {x}`` is rationally acyclic, a non-surjective
    map factors through one of them and has Lefschetz number 1.  Surjective
    self-maps of a finite poset are automorphisms, so it remains to check that
    each automorphism fixes a point.  Returns True or None (inconclusive).
    """
    if len(X) == 1:
        return True
    for i in range(len(X)):
        if not is_rationally_acyclic(X.subposet_mask(X.full_mask & ~(1 << i))):
            return None
    for g in automorphisms(X):
        if all(g[x] != x for x in X.elements):
            return None
    return True


def has_fpp(X: Poset, budget: int | None = None, method: str = "auto") -> Verdict:
    """Does every order-preserving self-map of ``X`` have a fixed point?

    ``method="enumerate"`` searches the fixed-point-free monotone maps.
    ``method="auto"`` also tries ``fpp_fast_path`` and cross-checks it against
    whatever the enumeration settles within the budget.
    """
    fast = fpp_fast_path(X) if method in ("auto", "fast") else None
    if method == "fast":
        return Verdict(fast, method="fast-path")
    if budget is not None and budget <= 0:
        raise ValueError("budget must be positive")
    allowed = [X.full_mask & ~(1 << i) for i in range(len(X))]
    try:
        for img in _monotone_search(X, X, allowed, budget):
            w = {X.elements[i]: X.elements[t] for i, t in enumerate(img)}
            if fast:
                raise TheoremViolation(f"fast path claims FPP but {w} is fixed-point free")
            return Verdict(False, w, method="enumeration")
    except BudgetExhausted as exc:
        if fast:
            return Verdict(True, examined=exc.examined, method="fast-path")
        return Verdict(None, examined=exc.examined)
    return Verdict(True, method="fast-path+enumeration" if fast else "enumeration")


def has_mfpp(X: Poset, budget: int | None = None) -> Verdict:
    """Does every susc acyclic-valued self-map of ``X`` have a fixed point?

    A fixed-point-free susc map satisfies ``F(x) <= X - X_{>=x}`` pointwise
    (if ``y >= x`` were in ``F(x)`` then ``y`` would lie in ``F(y)``), so the
    complement-of-up-set map is tried first and the search is confined below it.
    """
    counter = _Counter(budget, "fixed-point-free susc map search")
    upper = [X.full_mask & ~X.up_mask(i) for i in range(len(X))]
    if not all(upper):
        return Verdict(True, method="empty-complement")
    top = MultiMap.from_masks(X, X, upper)
    if has_acyclic_values(top):
        return Verdict(False, top, 1, method="complement-up-set")
    try:
        for masks in _susc_search(X, X, [0] * len(X), upper, counter):
            return Verdict(False, MultiMap.from_masks(X, X, masks), counter.examined)
    except BudgetExhausted as exc:
        return Verdict(None, examined=exc.examined)
    return Verdict(True, examined=counter.examined)


@dataclass
class AuditReport:
    rationally_acyclic: bool
    mfpp: Verdict
    fpp: Verdict

    def as_dict(self) -> dict:
        return {"rationally_acyclic": self.rationally_acyclic,
                "mfpp": self.mfpp.as_dict(), "fpp": self.fpp.as_dict()}


def implication_audit(X: Poset, budget: int | None = None) -> AuditReport:
    """Check rationally acyclic => MFPP => FPP on ``X``."""
    report = AuditReport(is_rationally_acyclic(X), has_mfpp(X, budget), has_fpp(X, budget))
    if report.rationally_acyclic and report.mfpp.value is False:
        raise TheoremViolation(f"rationally acyclic space without the MFPP: {report.mfpp.witness!r}")
    if report.mfpp.value is True and report.fpp.value is False:
        raise TheoremViolation(f"MFPP holds but FPP fails: {report.fpp.witness!r}")
    return report


# -- homotopy ---------------------------------------------------------------


def _require_fence_member(F: MultiMap):
    if require_strong(F) != "susc":
        raise PreconditionError("fences need susc maps", witness=classify(F).witnesses.get("susc"))


def _neighbors(F: MultiMap, direction: str, counter: _Counter) -> Iterator[tuple]:
    X = F.domain
    n = len(X)
    if direction == "down":
        lower, upper = [0] * n, list(F.masks)
    elif direction == "up":
        lower, upper = list(F.masks), [X.full_mask] * n
    else:
        raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")
    yield from _susc_search(X, X, lower, upper, counter)


def fence_neighbors(F: MultiMap, direction: str, budget: int | None = None) -> list[MultiMap]:
    """All susc acyclic-valued ``H`` with ``H <= F`` (down) or ``H >= F`` (up), F included."""
    _require_fence_member(F)
    counter = _Counter(budget, "fence neighbor enumeration")
    return [MultiMap.from_masks(F.domain, F.domain, m) for m in _neighbors(F, direction, counter)]


@dataclass
class Fence:
    """``maps[0] R maps[1] R ...`` with ``relations[k]`` in {'<=', '>='}."""

    maps: list
    relations: list = field(default_factory=list)

    def is_valid(self) -> bool:
        if len(self.relations) != len(self.maps) - 1:
            return False
        for (a, b), rel in zip(zip(self.maps, self.maps[1:]), self.relations):
            if not (a <= b if rel == "<=" else a >= b):
                return False
        for F in self.maps:
            if not (classify(F).susc and has_acyclic_values(F)):
                return False
        return True

    def as_dict(self) -> dict:
        return {"maps": [F.as_dict() for F in self.maps], "relations": list(self.relations)}


@dataclass
class HomotopyResult:
    value: bool | None
    fence: Fence | None = None
    examined: int = 0


def _bfs(F: MultiMap, counter: _Counter, target: MultiMap | None = None):
    start = F.masks
    parent = {start: None}
    queue = deque([start])
    X = F.domain
    while queue:
        cur = queue.popleft()
        node = MultiMap.from_masks(X, X, cur)
        for direction, rel in (("down", ">="), ("up", "<=")):
            for m in _neighbors(node, direction, counter):
                if m in parent:
                    continue
                parent[m] = (cur, rel)
                if target is not None and m == target.masks:
                    return parent, m
                queue.append(m)
    return parent, None


def are_homotopic(F: MultiMap, G: MultiMap, budget: int | None = None) -> HomotopyResult:
    """Breadth-first search for a fence from ``F`` to ``G``.

    Neighbors are generated lazily, so only the homotopy class of ``F`` is
    ever explored.  The fence returned is a shortest one, hence alternating.
    """
    for H in (F, G):
        _require_fence_member(H)
    if F.domain != G.domain:
        raise PreconditionError("maps live on different spaces")
    if F == G:
        return HomotopyResult(True, Fence([F], []))
    counter = _Counter(budget, "homotopy search")
    try:
        parent, hit = _bfs(F, counter, G)
    except BudgetExhausted as exc:
        return HomotopyResult(None, examined=exc.examined)
    if hit is None:
        return HomotopyResult(False, examined=counter.examined)
    chain, rels = [hit], []
    while parent[chain[-1]] is not None:
        prev, rel = parent[chain[-1]]
        rels.append(rel)
        chain.append(prev)
    X = F.domain
    maps = [MultiMap.from_masks(X, X, m) for m in reversed(chain)]
    return HomotopyResult(True, Fence(maps, list(reversed(rels))), counter.examined)


def homotopy_class(F: MultiMap, budget: int | None = None) -> list[MultiMap]:
    """Every map homotopic to ``F``, in discovery order."""
    _require_fence_member(F)
    counter = _Counter(budget, "homotopy class enumeration")
    parent, _ = _bfs(F, counter)
    return [MultiMap.from_masks(F.domain, F.domain, m) for m in parent]


def homotopy_invariance_check(F: MultiMap, G: MultiMap, fence: Fence) -> bool:
    """Homotopic maps induce the same free-quotient matrices and Lefschetz numbers."""
    if not fence.is_valid() or fence.maps[0] != F or fence.maps[-1] != G:
        raise PreconditionError("not a valid fence from F to G")
    reference = induced_map(F)
    for H in fence.maps[1:]:
        if induced_map(H) != reference:
            return False
    return lefschetz_number(F) == lefschetz_number(G)


# -- the isotone counterexample ---------------------------------------------


@dataclass
class Prop7Report:
    classification: dict
    acyclic_values: bool
    selectors: list
    identity_lefschetz: int
    fold_lefschetz: int

    @property
    def holds(self) -> bool:
        c = self.classification
        return (c["usc"] and c["lsc"] and not c["susc"] and not c["slsc"] and self.acyclic_values
                and self.identity_lefschetz != self.fold_lefschetz)

    def as_dict(self) -> dict:
        return {"classification": self.classification, "acyclic_values": self.acyclic_values,
                "selector_count": len(self.selectors),
                "identity_lefschetz": self.identity_lefschetz, "fold_lefschetz": self.fold_lefschetz,
                "holds": self.holds}


def prop7_counterexample() -> Prop7Report:
    """An isotone map on the circle model with selectors of different Lefschetz numbers."""
    X = Poset.from_covers("abcd", [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")])
    F = MultiMap(X, X, {"a": "abc", "b": "abc", "c": "acd", "d": "acd"})
    report = classify(F)
    sels = selectors(F)
    identity = {x: x for x in X.elements}
    fold = {"a": "a", "b": "a", "c": "c", "d": "c"}
    if identity not in sels or fold not in sels:
        raise TheoremViolation("expected selectors are missing")
    c = {k: getattr(report, k) for k in ("usc", "lsc", "susc", "slsc")}
    return Prop7Report(c, bool(has_acyclic_values(F)), sels,
                       lefschetz_single(identity, X), lefschetz_single(fold, X))
