"""Induced homology maps and Lefschetz numbers of multivalued maps.

Two independent routes are provided.  The homology route builds the graph of
``F`` and composes ``(p2)_* (p1)_*^{-1}`` on free quotients.  The carrier
route builds a chain map carried by ``sigma -> K(F(max sigma))`` and takes
its Hopf trace.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .homology import (
    ChainMap,
    Homology,
    SimplicialComplex,
    boundary,
    homology,
    induced_on_free_quotient,
    is_acyclic,
    order_complex,
    simplicial_map,
)
from .linalg import invert_unimodular, is_unimodular, smith
from .multimap import (
    MultiMap,
    PreconditionError,
    classify,
    graph,
    has_acyclic_values,
    opposite_map,
    primed_map,
)
from .poset import Poset

__all__ = [
    "AcyclicCarrier",
    "InducedMap",
    "carrier_chain_map",
    "carrier_phi",
    "induced_map",
    "lefschetz_number",
    "lefschetz_of_chain_map",
    "lefschetz_single",
    "require_strong",
]


class AcyclicCarrier:
    """An inclusion-preserving assignment of acyclic subcomplexes to simplices."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, values, *, check: bool = True):
        self.source = source
        self.target = target
        self._values = values  # mapping or callable simplex -> SimplicialComplex
        if check:
            self.check()

    def __call__(self, simplex) -> SimplicialComplex:
        if callable(self._values):
            return self._values(simplex)
        return self._values[simplex]

    def check(self) -> None:
        for s in self.source:
            value = self(s)
            if not value.is_subcomplex_of(self.target):
                raise PreconditionError("carrier value is not a subcomplex of the target", witness=s)
            if not is_acyclic(value):
                raise PreconditionError("carrier value is not acyclic", witness=s)
            for face in boundary(s):
                if not self(face).is_subcomplex_of(value):
                    raise PreconditionError("carrier is not monotone", witness=(face, s))

    def carries(self, phi: ChainMap) -> bool:
        """Every simplex in the support of ``phi(s)`` lies in ``self(s)``."""
        return all(t in self(s) for s, img in phi.images.items() for t in img)


def require_strong(F: MultiMap, *, self_map: bool = True) -> str:
    """Check the Lefschetz hypotheses; return ``"susc"`` or ``"slsc"``."""
    if self_map and not F.is_self_map():
        raise PreconditionError("a self-map is required")
    report = classify(F)
    if not (report.susc or report.slsc):
        raise PreconditionError("map is neither susc nor slsc", witness=report.witnesses.get("susc"))
    values = has_acyclic_values(F)
    if not values:
        bad = next(x for x, v in values.per_element.items() if v != "acyclic")
        raise PreconditionError(f"value at {bad!r} is {values.per_element[bad]}", witness=bad)
    return "susc" if report.susc else "slsc"


def carrier_phi(F: MultiMap) -> AcyclicCarrier:
    """The carrier ``sigma -> K(F(max sigma))`` of a susc acyclic-valued self-map."""
    if require_strong(F) != "susc":
        raise PreconditionError("the carrier needs a susc map", witness=classify(F).witnesses.get("susc"))
    X = F.domain
    K = order_complex(X)
    per_point = {x: order_complex(X.subposet_mask(m)) for x, m in zip(X.elements, F.masks)}
    return AcyclicCarrier(K, K, lambda s: per_point[X.chain_max(s)], check=False)


def carrier_chain_map(phi: AcyclicCarrier, pick=min) -> ChainMap:
    """A chain map carried by ``phi``, built degree by degree.

    Each vertex goes to the vertex of its carrier value chosen by ``pick``
    (earliest in the global order by default).  In higher degrees the image of
    the boundary is a cycle in an acyclic subcomplex, filled by an integral
    solve of that subcomplex's boundary matrix.
    """
    K, L = phi.source, phi.target
    pos = {v: i for i, v in enumerate(L.vertices)}
    cm = ChainMap(K, L, {})
    images = cm.images
    for (v,) in K.simplices[0] if K.dimension >= 0 else ():
        verts = [w for (w,) in phi((v,)).simplices[0]]
        images[(v,)] = {(pick(verts, key=pos.__getitem__),): 1}
    solvers = {}
    for n in range(1, K.dimension + 1):
        for s in K.simplices[n]:
            value = phi(s)
            z = cm(boundary(s))
            if not z:
                continue
            key = (id(value), n)
            if key not in solvers:
                solvers[key] = (value, smith(value.boundary_matrix(n)))
            _, snf = solvers[key]
            if any(t not in value for t in z):
                raise PreconditionError("image of the boundary leaves the carrier", witness=s)
            x = snf.solve(value.chain_vector(n - 1, z))
            if x is None:
                raise PreconditionError("carrier value is not acyclic", witness=s)
            images[s] = value.vector_chain(n, x) if value.count(n) else {}
    return cm


def lefschetz_of_chain_map(phi: ChainMap) -> int:
    return phi.hopf_trace()


@dataclass
class InducedMap:
    """Matrices of ``F_*`` on ``H_n / T_n`` for each degree ``n``."""

    matrices: list
    route: str

    def trace(self, n: int) -> int:
        return _trace(self.matrices[n]) if n < len(self.matrices) else 0

    @property
    def lefschetz(self) -> int:
        return sum((-1) ** n * self.trace(n) for n in range(len(self.matrices)))

    def as_lists(self) -> list:
        return [[[int(v) for v in row] for row in m] for m in self.matrices]

    def __eq__(self, other):
        if not isinstance(other, InducedMap):
            return NotImplemented
        return self.as_lists() == other.as_lists()


def _roof(G: Poset, p1: Mapping, X: Poset, p2: Mapping, Y: Poset, HX: Homology, HY: Homology):
    """``(p2)_* (p1)_*^{-1}`` for the roof ``X <- G -> Y``."""
    HG = homology(order_complex(G))
    A1 = induced_on_free_quotient(simplicial_map(p1, G, X), HG, HX)
    A2 = induced_on_free_quotient(simplicial_map(p2, G, Y), HG, HY)
    top = max(len(HX.groups), len(HY.groups))
    out = []
    for n in range(top):
        a1 = A1[n] if n < len(A1) else None
        if a1 is None or not is_unimodular(a1):
            raise PreconditionError(f"(p1)_* is not invertible in degree {n}")
        out.append(A2[n].dot(invert_unimodular(a1)))
    return out


def induced_map(F: MultiMap, route: str = "auto") -> InducedMap:
    """``F_*`` on free quotients for a susc or slsc map with acyclic values.

    ``route`` is ``"graph"`` (the graph of ``F`` in ``X x Y``), ``"primed"``
    (the graph of the same values over ``X^op``, which needs slsc) or
    ``"auto"`` (graph for susc maps, primed otherwise).  ``K(X^op)`` is the
    same complex as ``K(X)``, so both routes land on the same homology.
    """
    kind = require_strong(F, self_map=False)
    X, Y = F.domain, F.codomain
    HX, HY = homology(order_complex(X)), homology(order_complex(Y))
    if route == "auto":
        route = "graph" if kind == "susc" else "primed"
    if route == "graph":
        g = graph(F)
        return InducedMap(_roof(g.poset, g.p1, X, g.p2, Y, HX, HY), "graph")
    if route == "primed":
        if not classify(F).slsc:
            raise PreconditionError("the primed route needs an slsc map", witness=classify(F).witnesses["slsc"])
        Fp = primed_map(F)
        g = graph(Fp)
        return InducedMap(_roof(g.poset, g.p1, Fp.domain, g.p2, Y, HX, HY), "primed")
    raise ValueError(f"unknown route {route!r}")


def lefschetz_number(F: MultiMap, via: str = "homology") -> int:
    """``L(F)`` via ``"homology"``, ``"carrier"`` or ``"both"`` (which must agree).

    The carrier route needs susc; for an slsc map it runs on ``F^op``, whose
    carrier lives on ``K(X^op) = K(X)``.
    """
    kind = require_strong(F)
    if via not in ("homology", "carrier", "both"):
        raise ValueError(f"unknown route {via!r}")
    results = {}
    if via in ("homology", "both"):
        results["homology"] = induced_map(F).lefschetz
    if via in ("carrier", "both"):
        G = F if kind == "susc" else opposite_map(F)
        results["carrier"] = lefschetz_of_chain_map(carrier_chain_map(carrier_phi(G)))
    values = set(results.values())
    if len(values) != 1:
        raise AssertionError(f"Lefschetz routes disagree: {results}")
    return values.pop()


def lefschetz_single(f: Mapping, X: Poset) -> int:
    """``L(f)`` of an order-preserving self-map from its action on homology."""
    H = homology(order_complex(X))
    mats = induced_on_free_quotient(simplicial_map(f, X, X), H, H)
    return sum((-1) ** n * _trace(m) for n, m in enumerate(mats))


def _trace(m: np.ndarray) -> int:
    return int(sum(m[i, i] for i in range(min(m.shape))))
