"""Pure weighted simplicial complexes, their face distributions and links.

Faces are stored as ascending vertex tuples; the empty tuple is the empty
face, so ``X(-1) == {()}`` and ``link(X, ()) is X``.  All probabilities are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Iterator, Mapping

import numpy as np

from hdx.errors import (
    DimensionError,
    DuplicateFaceError,
    EmptyComplexError,
    InputError,
    NotAFaceError,
    PurityError,
)

Face = tuple


def canonical(face: Iterable[Hashable]) -> Face:
    """Ascending vertex tuple for ``face``; rejects repeated vertices."""
    t = tuple(sorted(face))
    if len(set(t)) != len(t):
        raise InputError(f"face has repeated vertices: {face!r}")
    return t


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InputError(f"weights must be exact rationals, got float {value!r}")
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError as exc:
            raise InputError(f"malformed rational {value!r}") from exc
        if q <= 0:
            raise InputError(f"malformed rational {value!r}: denominator must be positive")
        return Fraction(p, q)
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed rational {value!r}") from exc


class SimplicialComplex:
    """A pure d-dimensional complex with a probability distribution on top faces.

    Build instances with :func:`build_complex` or :func:`complete_complex`.
    Instances are treated as immutable; derived data (face distributions,
    links, coboundary spaces) is memoised on the instance.
    """

    def __init__(self, top_weights: Mapping[Face, Fraction]):
        self.top_weights: dict[Face, Fraction] = dict(sorted(top_weights.items()))
        self.dimension: int = len(next(iter(self.top_weights))) - 1
        levels: dict[int, set] = {k: set() for k in range(-1, self.dimension + 1)}
        for top in self.top_weights:
            for size in range(len(top) + 1):
                levels[size - 1].update(combinations(top, size))
        self._faces = {k: tuple(sorted(v)) for k, v in levels.items()}
        self._face_sets = {k: frozenset(v) for k, v in levels.items()}
        self._cache: dict = {}

    def faces(self, k: int) -> tuple[Face, ...]:
        """The k-faces in ascending lexicographic order (empty outside -1..d)."""
        return self._faces.get(k, ())

    def has_face(self, face: Iterable[Hashable]) -> bool:
        t = tuple(sorted(face))
        return t in self._face_sets.get(len(t) - 1, ())

    @property
    def vertices(self) -> tuple:
        return tuple(v for (v,) in self.faces(0))

    def distribution(self, k: int) -> FaceDistribution:
        return face_distribution(self, k)

    def prob(self, face: Face) -> Fraction:
        return face_distribution(self, len(face) - 1).probs[face]

    def cofaces(self, k: int) -> dict[Face, tuple[tuple[Face, int], ...]]:
        """Map each k-face to its (k+1)-cofaces and the position of the added vertex."""
        key = ("cofaces", k)
        if key not in self._cache:
            table: dict[Face, list] = {f: [] for f in self.faces(k)}
            for big in self.faces(k + 1):
                for i in range(len(big)):
                    table[big[:i] + big[i + 1:]].append((big, i))
            self._cache[key] = {f: tuple(v) for f, v in table.items()}
        return self._cache[key]

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.top_weights == other.top_weights

    def __hash__(self):
        return hash(tuple(self.top_weights.items()))

    def __repr__(self):
        counts = ", ".join(f"{len(self.faces(k))}" for k in range(self.dimension + 1))
        return f"SimplicialComplex(d={self.dimension}, f-vector=({counts}))"

    def __getstate__(self):
        return {"top_weights": self.top_weights}

    def __setstate__(self, state):
        self.__init__(state["top_weights"])


@dataclass(frozen=True)
class FaceDistribution:
    """Exact probability map P_k over the k-faces of a complex."""

    dimension: int
    probs: Mapping[Face, Fraction]

    def __getitem__(self, face: Face) -> Fraction:
        return self.probs[face]

    def __iter__(self) -> Iterator[Face]:
        return iter(self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def items(self):
        return self.probs.items()

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))


@dataclass(frozen=True)
class LinkView:
    base: Face
    complex: SimplicialComplex

    def distribution(self, k: int) -> FaceDistribution:
        return face_distribution(self.complex, k)


@dataclass(frozen=True)
class OutsidePair:
    tau: Face
    index: int
    prob: Fraction
    realized: Face


@dataclass(frozen=True)
class OutsidePairSet:
    """The k-faces completing ``base`` to a (k+1)-face without containing it."""

    base: Face
    k: int
    pairs: tuple[OutsidePair, ...]

    def total(self) -> Fraction:
        return sum((p.prob for p in self.pairs), Fraction(0))


@dataclass(frozen=True)
class WeightedGraph:
    vertices: tuple
    vertex_weights: Mapping
    edges: tuple
    edge_weights: Mapping

    def adjacency(self) -> np.ndarray:
        index = {v: i for i, v in enumerate(self.vertices)}
        w = np.zeros((len(self.vertices), len(self.vertices)))
        for (a, b) in self.edges:
            w[index[a], index[b]] = w[index[b], index[a]] = float(self.edge_weights[(a, b)])
        return w

    def normalized_adjacency(self) -> np.ndarray:
        """Symmetric form D^-1/2 W D^-1/2 of the random-walk matrix D^-1 W."""
        w = self.adjacency()
        deg = w.sum(axis=1)
        inv = np.zeros_like(deg)
        inv[deg > 0] = 1.0 / np.sqrt(deg[deg > 0])
        return inv[:, None] * w * inv[None, :]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        nbrs: dict = {v: set() for v in self.vertices}
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for u in nbrs[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)


def build_complex(top_faces) -> SimplicialComplex:
    """Build a complex from ``(vertex_set, weight)`` pairs.

    Weights may be ints, Fractions, or ``"p/q"`` strings, and ``None`` means 1.
    They are normalised to sum to one.

    >>> X = build_complex([({1, 2, 3}, 1), ({1, 2, 4}, 1)])
    >>> X.faces(1)
    ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))
    """
    entries = []
    for item in top_faces:
        if isinstance(item, tuple) and len(item) == 2 and not isinstance(item[0], (int, str)):
            verts, w = item
        else:
            verts, w = item, None
        entries.append((canonical(verts), Fraction(1) if w is None else to_fraction(w)))
    if not entries:
        raise EmptyComplexError("a complex needs at least one top face")
    sizes = {len(f) for f, _ in entries}
    if len(sizes) > 1:
        raise PurityError(f"top faces have mixed cardinalities {sorted(sizes)}; complex is not pure")
    weights: dict[Face, Fraction] = {}
    for face, w in entries:
        if face in weights:
            raise DuplicateFaceError(f"duplicate top face {face!r}")
        if w <= 0:
            raise InputError(f"top face {face!r} has non-positive weight {w}")
        weights[face] = w
    total = sum(weights.values(), Fraction(0))
    return SimplicialComplex({f: w / total for f, w in weights.items()})


def complete_complex(n: int, d: int) -> SimplicialComplex:
    """All (d+1)-subsets of ``0..n-1`` with uniform weights."""
    if d < 0 or n <= d:
        raise DimensionError(f"complete_complex needs n > d >= 0, got n={n}, d={d}")
    tops = list(combinations(range(n), d + 1))
    w = Fraction(1, len(tops))
    return SimplicialComplex({t: w for t in tops})


def face_distribution(X: SimplicialComplex, k: int) -> FaceDistribution:
    """P_k: draw a top face from P_d, then a uniform k-subface of it."""
    if not -1 <= k <= X.dimension:
        raise DimensionError(f"dimension {k} outside -1..{X.dimension}")
    key = ("dist", k)
    cached = X._cache.get(key)
    if cached is not None:
        return cached
    share = comb(X.dimension + 1, k + 1)
    probs: dict[Face, Fraction] = {}
    for top, w in X.top_weights.items():
        part = w / share
        for sub in combinations(top, k + 1):
            probs[sub] = probs.get(sub, 0) + part
    dist = FaceDistribution(k, dict(sorted(probs.items())))
    X._cache[key] = dist
    return dist


def link(X: SimplicialComplex, sigma: Iterable[Hashable]) -> LinkView:
    """The complex {tau - sigma : sigma <= tau in X} with conditioned weights."""
    base = canonical(sigma)
    if not X.has_face(base):
        raise NotAFaceError(base)
    key = ("link", base)
    cached = X._cache.get(key)
    if cached is not None:
        return cached
    if not base:
        view = LinkView((), X)
    else:
        s = set(base)
        sub = {
            tuple(v for v in top if v not in s): w
            for top, w in X.top_weights.items()
            if s.issubset(top)
        }
        total = sum(sub.values(), Fraction(0))
        view = LinkView(base, SimplicialComplex({t: w / total for t, w in sub.items()}))
    X._cache[key] = view
    return view


def outside_pairs(X: SimplicialComplex, sigma: Iterable[Hashable], k: int) -> OutsidePairSet:
    """Pairs (tau, i) with tau in X_sigma(k - l) and 0 <= i <= l.

    Each pair carries probability P_{X_sigma}(tau) / (l + 1) and realises the
    k-face obtained from sigma + tau by dropping the i-th vertex of sigma.
    """
    base = canonical(sigma)
    ell = len(base) - 1
    if ell < 0:
        raise DimensionError("outside pairs need a non-empty base face")
    if not ell <= k <= X.dimension - 1:
        raise DimensionError(f"need {ell} <= k <= {X.dimension - 1}, got k={k}")
    key = ("outside", base, k)
    cached = X._cache.get(key)
    if cached is not None:
        return cached
    lk = link(X, base)
    pairs = []
    for tau, p in face_distribution(lk.complex, k - ell).items():
        share = p / (ell + 1)
        for i in range(ell + 1):
            realized = tuple(sorted(base[:i] + base[i + 1:] + tau))
            pairs.append(OutsidePair(tau, i, share, realized))
    result = OutsidePairSet(base, k, tuple(pairs))
    X._cache[key] = result
    return result


def underlying_graph(X: SimplicialComplex) -> WeightedGraph:
    """Vertices and edges of X weighted by P_0 and P_1."""
    if X.dimension < 1:
        raise DimensionError("the underlying graph needs a complex of dimension >= 1")
    p0 = face_distribution(X, 0).probs
    p1 = face_distribution(X, 1).probs
    return WeightedGraph(
        vertices=tuple(v for (v,) in p0),
        vertex_weights={v: p for (v,), p in p0.items()},
        edges=tuple(p1),
        edge_weights=dict(p1),
    )
