"""Finite T0 spaces represented as finite posets.

Open sets are the down-sets, so the smallest open set ``U_x`` is the set of
points below ``x`` and the closure of ``{x}`` is the set of points above it.

Internally every subset of a poset is a Python ``int`` bitmask in which bit
``i`` stands for ``elements[i]``.  The element order given at construction is
the global order used for simplex orientation and every tie-break.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from functools import cached_property
from itertools import permutations, product as _iproduct

import networkx as nx

__all__ = [
    "BudgetExhausted",
    "Poset",
    "PosetError",
    "is_monotone",
    "iter_bits",
    "iter_posets",
    "monotone_maps",
    "product",
]


class PosetError(ValueError):
    """Invalid poset input or query."""


class BudgetExhausted(RuntimeError):
    """A brute-force search ran out of budget before completing."""

    def __init__(self, message: str, examined: int, partial=None):
        super().__init__(f"{message} (examined {examined} candidates)")
        self.examined = examined
        self.partial = partial


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite poset (equivalently, a finite T0 space)."""

    __slots__ = ("elements", "index", "_down", "_up", "__dict__")

    def __init__(self, elements: Iterable[Hashable], down_masks: Iterable[int]):
        # Trusted constructor: ``down_masks[i]`` is the set of j with j <= i.
        # Use ``from_covers`` for validated input.
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._down = tuple(down_masks)
        up = [0] * len(self.elements)
        for i, d in enumerate(self._down):
            for j in iter_bits(d):
                up[j] |= 1 << i
        self._up = tuple(up)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_covers(cls, elements, covers, *, allow_empty: bool = False) -> "Poset":
        """Build a poset from elements and (lower, upper) cover pairs.

        Redundant pairs are accepted; the stored ``covers`` are always the
        transitive reduction.  Raises ``PosetError`` on duplicates, unknown
        identifiers and cycles.
        """
        elements = list(elements)
        if not elements and not allow_empty:
            raise PosetError("empty poset")
        seen = set()
        for x in elements:
            if x in seen:
                raise PosetError(f"duplicate element {x!r}")
            seen.add(x)
        g = nx.DiGraph()
        g.add_nodes_from(elements)
        for pair in covers:
            lo, hi = pair
            for z in (lo, hi):
                if z not in seen:
                    raise PosetError(f"unknown identifier {z!r} in cover {[lo, hi]!r}")
            if lo == hi:
                raise PosetError(f"cycle in covers: {lo!r} -> {lo!r}")
            g.add_edge(lo, hi)
        if not nx.is_directed_acyclic_graph(g):
            cycle = [u for u, _ in nx.find_cycle(g)]
            raise PosetError("cycle in covers: " + " -> ".join(map(repr, cycle + cycle[:1])))
        index = {x: i for i, x in enumerate(elements)}
        down = [1 << i for i in range(len(elements))]
        for x in nx.topological_sort(g):
            i = index[x]
            for lo in g.predecessors(x):
                down[i] |= down[index[lo]]
        return cls(elements, down)

    @classmethod
    def from_leq(cls, elements, leq) -> "Poset":
        """Build a poset from a predicate ``leq(x, y)``; the relation is checked."""
        elements = list(elements)
        n = len(elements)
        down = [0] * n
        for i, y in enumerate(elements):
            for j, x in enumerate(elements):
                if i == j or leq(x, y):
                    down[i] |= 1 << j
        for i in range(n):
            for j in iter_bits(down[i]):
                if j != i and (down[j] >> i) & 1:
                    raise PosetError(f"antisymmetry fails for {elements[i]!r}, {elements[j]!r}")
                if down[j] & ~down[i]:
                    raise PosetError("relation is not transitive")
        return cls(elements, down)

    # -- basic protocol ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._down == other._down

    def __hash__(self) -> int:
        return hash((self.elements, self._down))

    def __repr__(self) -> str:
        covers = ", ".join(f"{lo}<{hi}" for lo, hi in self.covers)
        return f"Poset([{', '.join(map(str, self.elements))}]; {covers})"

    # -- masks ------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def pos(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def to_mask(self, subset: Iterable) -> int:
        m = 0
        for x in subset:
            m |= 1 << self.pos(x)
        return m

    def from_mask(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in iter_bits(mask))

    def sorted(self, subset: Iterable) -> tuple:
        """The members of ``subset`` in the global element order."""
        return tuple(sorted(subset, key=self.pos))

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_of_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self._down[i]
        return out

    def up_of_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self._up[i]
        return out

    # -- order queries ----------------------------------------------------

    def leq(self, x, y) -> bool:
        return bool((self._down[self.pos(y)] >> self.pos(x)) & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def relation(self) -> frozenset:
        """All pairs (x, y) with x <= y."""
        return frozenset(
            (self.elements[j], self.elements[i])
            for i in range(len(self))
            for j in iter_bits(self._down[i])
        )

    @cached_property
    def _cover_masks(self) -> tuple[int, ...]:
        # lower covers of each element
        out = []
        for i, d in enumerate(self._down):
            strict = d & ~(1 << i)
            covered = 0
            for j in iter_bits(strict):
                covered |= self._down[j] & ~(1 << j)
            out.append(strict & ~covered)
        return tuple(out)

    def lower_cover_mask(self, i: int) -> int:
        return self._cover_masks[i]

    @cached_property
    def covers(self) -> tuple:
        """The Hasse diagram as (lower, upper) pairs, sorted by position."""
        pairs = [
            (j, i) for i, m in enumerate(self._cover_masks) for j in iter_bits(m)
        ]
        pairs.sort()
        return tuple((self.elements[j], self.elements[i]) for j, i in pairs)

    def min_open(self, x) -> frozenset:
        """The smallest open set ``U_x = {y : y <= x}``."""
        return self.from_mask(self._down[self.pos(x)])

    def closure(self, x) -> frozenset:
        """The closure of ``{x}``, i.e. ``{y : y >= x}``."""
        return self.from_mask(self._up[self.pos(x)])

    def min_open_of_set(self, subset: Iterable) -> frozenset:
        return self.from_mask(self.down_of_mask(self.to_mask(subset)))

    def closure_of_set(self, subset: Iterable) -> frozenset:
        return self.from_mask(self.up_of_mask(self.to_mask(subset)))

    def is_down_set(self, mask: int) -> bool:
        return self.down_of_mask(mask) == mask

    def is_up_set(self, mask: int) -> bool:
        return self.up_of_mask(mask) == mask

    def maximal(self) -> tuple:
        return tuple(x for i, x in enumerate(self.elements) if self._up[i] == 1 << i)

    def minimal(self) -> tuple:
        return tuple(x for i, x in enumerate(self.elements) if self._down[i] == 1 << i)

    def chain_max(self, chain: Iterable):
        """The maximum of a totally ordered subset."""
        best = None
        for x in chain:
            if best is None or self.leq(best, x):
                best = x
        return best

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Positions in a deterministic linear extension (smallest position first)."""
        remaining = list(range(len(self)))
        done = 0
        order = []
        while remaining:
            for k, i in enumerate(remaining):
                if self._down[i] & ~(1 << i) & ~done == 0:
                    order.append(i)
                    done |= 1 << i
                    del remaining[k]
                    break
        return tuple(order)

    # -- constructions ----------------------------------------------------

    def opposite(self) -> "Poset":
        return Poset(self.elements, self._up)

    def subposet(self, subset: Iterable) -> "Poset":
        return self.subposet_mask(self.to_mask(subset))

    def subposet_mask(self, mask: int) -> "Poset":
        keep = list(iter_bits(mask))
        remap = {old: new for new, old in enumerate(keep)}
        down = []
        for old in keep:
            d = 0
            for j in iter_bits(self._down[old] & mask):
                d |= 1 << remap[j]
            down.append(d)
        return Poset((self.elements[i] for i in keep), down)

    # -- beat points and cores --------------------------------------------

    def _beat_mask(self) -> int:
        out = 0
        for i in range(len(self)):
            below = self._down[i] & ~(1 << i)
            above = self._up[i] & ~(1 << i)
            if below and any(self._down[j] == below for j in iter_bits(below)):
                out |= 1 << i
            elif above and any(self._up[j] == above for j in iter_bits(above)):
                out |= 1 << i
        return out

    def beat_points(self) -> frozenset:
        return self.from_mask(self._beat_mask())

    def core(self) -> "Poset":
        """Remove beat points one at a time, earliest element first."""
        if not self.elements:
            raise PosetError("core of the empty poset")
        current = self
        while True:
            beats = current._beat_mask()
            if not beats:
                return current
            first = (beats & -beats).bit_length() - 1
            current = current.subposet_mask(current.full_mask & ~(1 << first))

    def is_contractible(self) -> bool:
        return len(self.core()) == 1


def product(X: Poset, Y: Poset) -> Poset:
    """The product order on pairs, listed lexicographically by position."""
    elements = [(x, y) for x in X.elements for y in Y.elements]
    m = len(Y)
    down = []
    for i in range(len(X)):
        for j in range(m):
            d = 0
            for a in iter_bits(X._down[i]):
                for b in iter_bits(Y._down[j]):
                    d |= 1 << (a * m + b)
            down.append(d)
    return Poset(elements, down)


def is_monotone(X: Poset, Y: Poset, f: Mapping) -> bool:
    if set(f) != set(X.elements) or not all(v in Y for v in f.values()):
        return False
    return all(Y.leq(f[lo], f[hi]) for lo, hi in X.covers)


def _monotone_search(X: Poset, Y: Poset, allowed, budget: int | None):
    """Backtracking over order-preserving maps along a linear extension of X.

    ``allowed[i]`` masks the admissible images of ``X.elements[i]``.  Yields
    lists of target positions indexed by source position.  Every candidate
    image tried counts against ``budget``.
    """
    order = X.linear_extension
    n = len(order)
    image = [None] * len(X)
    examined = 0

    def rec(k):
        nonlocal examined
        if k == n:
            yield list(image)
            return
        i = order[k]
        cand = allowed[i]
        for c in iter_bits(X.lower_cover_mask(i)):
            cand &= Y._up[image[c]]
        for t in iter_bits(cand):
            examined += 1
            if budget is not None and examined > budget:
                raise BudgetExhausted("monotone map search", examined - 1)
            image[i] = t
            yield from rec(k + 1)
        image[i] = None

    yield from rec(0)


def monotone_maps(X: Poset, Y: Poset, budget: int | None = None) -> list[dict]:
    """All order-preserving maps X -> Y in a deterministic order."""
    if budget is not None and budget <= 0:
        raise ValueError("budget must be positive")
    out = []
    try:
        for img in _monotone_search(X, Y, [Y.full_mask] * len(X), budget):
            out.append({X.elements[i]: Y.elements[t] for i, t in enumerate(img)})
    except BudgetExhausted as exc:
        exc.partial = out
        raise
    return out


def iter_posets(n: int) -> Iterator[Poset]:
    """One representative of every isomorphism class of n-element posets.

    Elements are the strings ``"0"``..``"n-1"``.  Every poset admits a
    labelling in which the order refines the natural one, so it suffices to
    scan strictly upper-triangular relations and keep canonical forms.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = list(permutations(range(n)))
    seen = set()
    for bits in _iproduct((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        canon = min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        down = [1 << i for i in range(n)]
        for i, j in rel:
            down[j] |= 1 << i
        yield Poset([str(i) for i in range(n)], down)
