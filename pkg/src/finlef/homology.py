"""Order complexes, integral simplicial homology and chain maps.

Simplices are tuples of poset elements listed in the global element order of
the ambient poset; the boundary of ``(v0, ..., vn)`` is the alternating sum of
its facets.  Chains are sparse ``{simplex: coefficient}`` dicts.

Homology is computed by first shrinking the chain complex with elementary
reductions along unit incidences and then taking Smith normal forms of the
(small) remainder.  The reduction records its steps, so any cycle of the
original complex can be pushed down to free-quotient coordinates and any
reduced generator lifted back to an honest cycle.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

import numpy as np

from .linalg import identity, invert_unimodular, smith, zeros
from .poset import Poset, PosetError, is_monotone, iter_bits

__all__ = [
    "ChainComplex",
    "ChainMap",
    "Homology",
    "HomologyGroup",
    "SimplicialComplex",
    "add_chain",
    "boundary",
    "chain_complex",
    "cycle_basis",
    "homology",
    "induced_on_free_quotient",
    "is_acyclic",
    "is_rationally_acyclic",
    "order_complex",
    "simplicial_map",
]


def boundary(simplex: tuple) -> dict:
    if len(simplex) <= 1:
        return {}
    return {simplex[:i] + simplex[i + 1:]: (-1) ** i for i in range(len(simplex))}


def add_chain(acc: dict, chain: Mapping, scale: int = 1) -> dict:
    """``acc += scale * chain`` in place, dropping zero coefficients."""
    for s, c in chain.items():
        v = acc.get(s, 0) + scale * c
        if v:
            acc[s] = v
        else:
            acc.pop(s, None)
    return acc


class SimplicialComplex:
    """A finite simplicial complex with a fixed vertex order."""

    def __init__(self, vertices, simplices):
        self.vertices = tuple(vertices)
        self._vpos = {v: i for i, v in enumerate(self.vertices)}
        by_dim = defaultdict(set)
        for s in simplices:
            s = tuple(sorted(s, key=self._vpos.__getitem__))
            by_dim[len(s) - 1].add(s)
        top = max(by_dim, default=-1)
        self.simplices = tuple(
            tuple(sorted(by_dim[d], key=lambda s: [self._vpos[v] for v in s]))
            for d in range(top + 1)
        )
        self.index = tuple({s: i for i, s in enumerate(ss)} for ss in self.simplices)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def __len__(self) -> int:
        return sum(len(ss) for ss in self.simplices)

    def __contains__(self, simplex) -> bool:
        d = len(simplex) - 1
        return 0 <= d <= self.dimension and simplex in self.index[d]

    def __iter__(self):
        for ss in self.simplices:
            yield from ss

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        counts = ", ".join(str(len(ss)) for ss in self.simplices)
        return f"SimplicialComplex(f-vector=({counts}))"

    def count(self, n: int) -> int:
        return len(self.simplices[n]) if 0 <= n <= self.dimension else 0

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(ss) for ss in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * len(ss) for n, ss in enumerate(self.simplices))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other for s in self)

    def sort_key(self, simplex) -> tuple:
        return (len(simplex), self.index[len(simplex) - 1][simplex])

    def boundary_matrix(self, n: int) -> np.ndarray:
        """The matrix of the boundary C_n -> C_{n-1}."""
        rows, cols = self.count(n - 1), self.count(n)
        out = zeros(rows, cols)
        if n >= 1:
            for j, s in enumerate(self.simplices[n] if n <= self.dimension else ()):
                for face, c in boundary(s).items():
                    out[self.index[n - 1][face], j] = c
        return out

    def chain_vector(self, n: int, chain: Mapping) -> np.ndarray:
        v = np.zeros(self.count(n), dtype=object)
        for s, c in chain.items():
            v[self.index[n][s]] = c
        return v

    def vector_chain(self, n: int, vec) -> dict:
        return {self.simplices[n][i]: int(c) for i, c in enumerate(vec) if c}


@lru_cache(maxsize=8192)
def order_complex(X: Poset) -> SimplicialComplex:
    """All nonempty chains of ``X``."""
    if not len(X):
        raise PosetError("order complex of the empty poset")
    chains = []
    strict_up = [X.up_mask(i) & ~(1 << i) for i in range(len(X))]

    def extend(chain, allowed):
        chains.append(chain)
        for j in iter_bits(allowed):
            extend(chain + (j,), allowed & strict_up[j])

    for i in range(len(X)):
        extend((i,), strict_up[i])
    return SimplicialComplex(
        X.elements, [tuple(X.elements[i] for i in sorted(c)) for c in chains]
    )


@dataclass(frozen=True)
class ChainComplex:
    """Boundary matrices of a simplicial complex, optionally augmented."""

    complex: SimplicialComplex
    boundaries: tuple
    augmentation: np.ndarray | None = None

    def d(self, n: int) -> np.ndarray:
        if 1 <= n < len(self.boundaries) + 1:
            return self.boundaries[n - 1]
        return self.complex.boundary_matrix(n)

    def check(self) -> bool:
        """``d_n d_{n+1} == 0`` everywhere and ``eps d_1 == 0`` if augmented."""
        K = self.complex
        for n in range(1, K.dimension):
            if (self.d(n).dot(self.d(n + 1)) != 0).any():
                return False
        if self.augmentation is not None and K.dimension >= 1:
            if (self.augmentation.dot(self.d(1)) != 0).any():
                return False
        return True


def chain_complex(K: SimplicialComplex, augmented: bool = False) -> ChainComplex:
    mats = tuple(K.boundary_matrix(n) for n in range(1, K.dimension + 1))
    eps = None
    if augmented:
        eps = zeros(1, K.count(0))
        eps[0, :] = 1
    return ChainComplex(K, mats, eps)


# -- homology -------------------------------------------------------------


@dataclass
class _Step:
    degree: int  # degree of the eliminated b; a has degree - 1
    a: tuple
    b: tuple
    eps: int
    db: dict  # boundary of b when eliminated
    ca: dict  # coefficient of a in the boundary of each coface, when eliminated


def _reduce(K: SimplicialComplex):
    bd = {}
    cob = defaultdict(dict)
    for n in range(1, K.dimension + 1):
        for s in K.simplices[n]:
            bd[s] = boundary(s)
            for f, c in bd[s].items():
                cob[f][s] = c
    for s in K.simplices[0]:
        bd[s] = {}
    alive = set(bd)
    key = K.sort_key
    order = sorted(bd, key=key)
    steps = []
    changed = True
    while changed:
        changed = False
        for b in order:
            if b not in alive or not bd[b]:
                continue
            units = [f for f, c in bd[b].items() if c in (1, -1)]
            if not units:
                continue
            a = min(units, key=key)
            eps = bd[b][a]
            db = dict(bd[b])
            ca = dict(cob[a])
            steps.append(_Step(len(b) - 1, a, b, eps, db, ca))
            for tau, lam in ca.items():
                if tau == b:
                    continue
                scale = -lam * eps
                row = bd[tau]
                for f, c in db.items():
                    v = row.get(f, 0) + scale * c
                    if v:
                        row[f] = v
                        cob[f][tau] = v
                    else:
                        row.pop(f, None)
                        cob[f].pop(tau, None)
            for f in db:
                cob[f].pop(b, None)
            for tau in cob.pop(b, {}):
                bd[tau].pop(b, None)
            for f in bd[a]:
                cob[f].pop(a, None)
            cob.pop(a, None)
            alive.discard(a)
            alive.discard(b)
            changed = True
    remaining = [[] for _ in range(K.dimension + 1)]
    for s in order:
        if s in alive:
            remaining[len(s) - 1].append(s)
    return steps, remaining, {s: bd[s] for s in alive}


@dataclass
class HomologyGroup:
    """``H_n`` of a complex with the data needed to evaluate induced maps."""

    degree: int
    betti: int
    torsion: tuple[int, ...]
    generators: list = field(repr=False)  # free-quotient representatives (chains)
    _homology: "Homology" = field(repr=False, default=None)
    _projection: np.ndarray = field(repr=False, default=None)

    def project(self, cycle: Mapping) -> list[int]:
        """Coordinates of the class of ``cycle`` in ``H_n / T_n``."""
        return self._homology._project(self.degree, cycle, self._projection)


class Homology:
    """Integral homology of a simplicial complex, degree by degree."""

    def __init__(self, K: SimplicialComplex):
        self.complex = K
        self._steps, cells, bd = _reduce(K)
        self._cells = cells
        self._cell_index = [{s: i for i, s in enumerate(c)} for c in cells]
        top = K.dimension
        dmat = []
        for n in range(top + 2):
            rows = len(cells[n - 1]) if 1 <= n <= top + 1 else 0
            cols = len(cells[n]) if n <= top else 0
            m = zeros(rows, cols)
            if 1 <= n <= top:
                for j, s in enumerate(cells[n]):
                    for f, c in bd[s].items():
                        m[self._cell_index[n - 1][f], j] = c
            dmat.append(m)
        self.groups = []
        for n in range(top + 1):
            self.groups.append(self._group(n, dmat[n], dmat[n + 1]))

    def _group(self, n, d_n, d_next):
        k_n = len(self._cells[n])
        snf = smith(d_n)
        r = snf.rank
        vinv = invert_unimodular(snf.V) if k_n else zeros(0, 0)
        z = snf.V[:, r:]
        rel = vinv[r:, :].dot(d_next) if d_next.shape[1] else zeros(k_n - r, 0)
        snf2 = smith(rel)
        s = snf2.rank
        torsion = tuple(int(d) for d in snf2.diagonal[:s] if d != 1)
        betti = (k_n - r) - s
        proj = snf2.U[s:, :].dot(vinv[r:, :]) if betti else zeros(0, k_n)
        uinv = invert_unimodular(snf2.U) if k_n - r else zeros(0, 0)
        gens = []
        if betti:
            reps = z.dot(uinv[:, s:])
            for j in range(betti):
                reduced = {self._cells[n][i]: int(c) for i, c in enumerate(reps[:, j]) if c}
                gens.append(self._lift(n, reduced))
        return HomologyGroup(n, betti, torsion, gens, self, proj)

    # pushes an original chain through every reduction step
    def _push(self, n: int, chain: Mapping) -> dict:
        c = dict(chain)
        for st in self._steps:
            if st.degree == n + 1:
                coef = c.get(st.a, 0)
                if coef:
                    add_chain(c, st.db, -coef * st.eps)
            elif st.degree == n:
                c.pop(st.b, None)
        return c

    def _lift(self, n: int, chain: Mapping) -> dict:
        c = dict(chain)
        for st in reversed(self._steps):
            if st.degree == n:
                lam = sum(v * st.ca.get(s, 0) for s, v in c.items() if s != st.b)
                if lam:
                    c[st.b] = c.get(st.b, 0) - lam * st.eps
        return c

    def _project(self, n, cycle, proj):
        reduced = self._push(n, cycle)
        vec = np.zeros(len(self._cells[n]), dtype=object)
        for s, c in reduced.items():
            vec[self._cell_index[n][s]] = c
        return [int(v) for v in proj.dot(vec)] if proj.shape[0] else []

    # -- summaries ----------------------------------------------------------

    def __getitem__(self, n: int) -> HomologyGroup:
        return self.groups[n]

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(g.betti for g in self.groups)

    @property
    def torsion(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.torsion for g in self.groups)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * b for n, b in enumerate(self.betti))

    def betti_at(self, n: int) -> int:
        return self.groups[n].betti if 0 <= n < len(self.groups) else 0

    def __repr__(self):
        return f"Homology(betti={self.betti}, torsion={self.torsion})"


def homology(K: SimplicialComplex | Poset) -> Homology:
    if isinstance(K, Poset):
        K = order_complex(K)
    cached = K.__dict__.get("_homology")
    if cached is None:
        cached = K.__dict__["_homology"] = Homology(K)
    return cached


def cycle_basis(K: SimplicialComplex, n: int) -> np.ndarray:
    """Columns form a Z-basis of the n-cycles of ``K``."""
    d = K.boundary_matrix(n)
    snf = smith(d)
    return snf.V[:, snf.rank:]


def is_acyclic(K: SimplicialComplex | Poset) -> bool:
    """Nonempty with vanishing reduced integral homology."""
    if isinstance(K, Poset):
        if not len(K):
            return False
        if K.is_contractible():
            return True
        K = order_complex(K)
    if not len(K):
        return False
    H = homology(K)
    return H.betti[0] == 1 and not any(H.betti[1:]) and not any(H.torsion)


def is_rationally_acyclic(K: SimplicialComplex | Poset) -> bool:
    if isinstance(K, Poset):
        if not len(K):
            return False
        K = order_complex(K)
    H = homology(K)
    return H.betti[0] == 1 and not any(H.betti[1:])


# -- chain maps -----------------------------------------------------------


class ChainMap:
    """A degree-wise linear map of chains, stored simplex by simplex."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, images: Mapping):
        self.source = source
        self.target = target
        self.images = dict(images)

    def __call__(self, chain: Mapping) -> dict:
        out = {}
        for s, c in chain.items():
            img = self.images.get(s)
            if img:
                add_chain(out, img, c)
        return out

    def matrix(self, n: int) -> np.ndarray:
        out = zeros(self.target.count(n), self.source.count(n))
        if n <= self.source.dimension:
            for j, s in enumerate(self.source.simplices[n]):
                for t, c in self.images.get(s, {}).items():
                    out[self.target.index[n][t], j] = c
        return out

    def trace(self, n: int) -> int:
        if n > self.source.dimension:
            return 0
        return sum(self.images.get(s, {}).get(s, 0) for s in self.source.simplices[n])

    def hopf_trace(self) -> int:
        """The alternating sum of chain-level traces."""
        return sum((-1) ** n * self.trace(n) for n in range(self.source.dimension + 1))

    def compose(self, first: "ChainMap") -> "ChainMap":
        """``self o first``."""
        return ChainMap(first.source, self.target,
                        {s: self(img) for s, img in first.images.items()})

    def is_chain_map(self) -> bool:
        for s in self.source:
            lhs = {}
            for t, c in self.images.get(s, {}).items():
                add_chain(lhs, boundary(t), c)
            rhs = self(boundary(s))
            if lhs != rhs:
                return False
        return True

    def preserves_augmentation(self) -> bool:
        return all(sum(self.images.get(v, {}).values()) == 1 for v in self.source.simplices[0])


def _sorted_sign(seq, pos):
    """Sign of the permutation sorting ``seq`` by ``pos``; 0 on repeats."""
    keys = [pos[v] for v in seq]
    if len(set(keys)) != len(keys):
        return 0, None
    sign = 1
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                sign = -sign
    return sign, tuple(sorted(seq, key=pos.__getitem__))


def simplicial_map(f: Mapping, X: Poset, Y: Poset) -> ChainMap:
    """The chain map of ``K(f): K(X) -> K(Y)`` for order-preserving ``f``."""
    if not is_monotone(X, Y, f):
        raise PosetError("map is not order-preserving")
    KX, KY = order_complex(X), order_complex(Y)
    images = {}
    for s in KX:
        sign, img = _sorted_sign([f[v] for v in s], KY._vpos)
        if sign:
            images[s] = {img: sign}
    return ChainMap(KX, KY, images)


def induced_on_free_quotient(phi: ChainMap, source: Homology, target: Homology) -> list[np.ndarray]:
    """Matrices of the maps ``H_n/T_n -> H_n/T_n`` induced by ``phi``."""
    top = max(len(source.groups), len(target.groups))
    out = []
    for n in range(top):
        bs, bt = source.betti_at(n), target.betti_at(n)
        m = zeros(bt, bs)
        for j in range(bs):
            img = phi(source.groups[n].generators[j])
            if bt:
                coords = target.groups[n].project(img)
                for i, c in enumerate(coords):
                    m[i, j] = c
        out.append(m)
    return out


def identity_matrices(H: Homology) -> list[np.ndarray]:
    return [identity(b) for b in H.betti]
