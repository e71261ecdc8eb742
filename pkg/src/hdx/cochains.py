"""Cochains over finite abelian groups and the coboundary operator.

A k-cochain is stored sparsely on canonical (ascending) k-faces; its value
on any other ordering of a face follows from antisymmetry.  Group elements
are tuples of residues, one per cyclic factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, prod
from typing import Iterable, Iterator, Mapping

from hdx.complex import FaceDistribution, SimplicialComplex, canonical, link, outside_pairs
from hdx.errors import DimensionError, InputError, NotAFaceError, check_budget


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{m_1} x ... x Z_{m_r} with elements as residue tuples.

    >>> G = FiniteAbelianGroup.parse("z2xz4")
    >>> G.add((1, 3), (1, 2))
    (0, 1)
    """

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(m < 2 for m in self.moduli):
            raise InputError(f"cyclic factors need modulus >= 2, got {self.moduli}")

    @classmethod
    def parse(cls, spec: str) -> FiniteAbelianGroup:
        parts = spec.strip().lower().split("x")
        moduli = []
        for part in parts:
            if not part.startswith("z") or not part[1:].isdigit():
                raise InputError(f"malformed group spec {spec!r}; expected e.g. 'z2' or 'z2xz4'")
            moduli.append(int(part[1:]))
        return cls(tuple(moduli))

    @classmethod
    def cyclic(cls, m: int) -> FiniteAbelianGroup:
        return cls((m,))

    def __str__(self):
        return "x".join(f"z{m}" for m in self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sub(self, a, b):
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(m) for m in self.moduli)))

    def nonzero_elements(self) -> list[tuple[int, ...]]:
        z = self.zero
        return [g for g in self.elements() if g != z]

    def coerce(self, value) -> tuple[int, ...]:
        """Accept an int (single cyclic factor) or a residue sequence."""
        if isinstance(value, int):
            value = (value,)
        value = tuple(value)
        if len(value) != len(self.moduli) or not all(isinstance(x, int) for x in value):
            raise InputError(f"{value!r} is not an element of {self}")
        return tuple(x % m for x, m in zip(value, self.moduli))


Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))


class Cochain:
    """An antisymmetric k-cochain on ``complex`` with values in ``group``.

    ``values`` maps canonical k-faces to group elements; zero entries are
    dropped.  Use :func:`evaluate` for arbitrary orderings of a face.
    """

    __slots__ = ("complex", "k", "group", "values", "_key")

    def __init__(self, complex: SimplicialComplex, k: int, group: FiniteAbelianGroup,
                 values: Mapping | None = None):
        if not -1 <= k <= complex.dimension:
            raise DimensionError(f"cochain dimension {k} outside -1..{complex.dimension}")
        clean = {}
        zero = group.zero
        for face, val in (values or {}).items():
            f = canonical(face)
            if len(f) != k + 1 or not complex.has_face(f):
                raise NotAFaceError(f, f"{f!r} is not a {k}-face of the complex")
            if f in clean:
                raise InputError(f"face {f!r} given twice")
            g = group.coerce(val)
            if g != zero:
                clean[f] = g
        self._init(complex, k, group, clean)

    def _init(self, complex, k, group, values):
        self.complex = complex
        self.k = k
        self.group = group
        self.values = values
        self._key = None

    @classmethod
    def _raw(cls, complex, k, group, values) -> Cochain:
        # values must already be canonical, validated, and free of zeros
        obj = cls.__new__(cls)
        obj._init(complex, k, group, values)
        return obj

    @classmethod
    def zero(cls, complex, k, group) -> Cochain:
        return cls._raw(complex, k, group, {})

    @classmethod
    def indicator(cls, complex, k, group, faces: Iterable, value=None) -> Cochain:
        """The cochain taking ``value`` (default the generator 1) on each given face."""
        val = group.coerce(value if value is not None else (1,) * len(group.moduli))
        return cls(complex, k, group, {canonical(f): val for f in faces})

    @property
    def support(self) -> frozenset:
        return frozenset(self.values)

    def is_zero(self) -> bool:
        return not self.values

    def key(self):
        if self._key is None:
            self._key = (self.k, frozenset(self.values.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.group == other.group and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Cochain(k={self.k}, group={self.group}, values={self.values})"

    def _check_compatible(self, other: Cochain):
        if self.k != other.k or self.group != other.group:
            raise DimensionError(
                f"cochains differ: (k={self.k}, {self.group}) vs (k={other.k}, {other.group})"
            )

    def __add__(self, other: Cochain) -> Cochain:
        self._check_compatible(other)
        out = dict(self.values)
        zero = self.group.zero
        for f, g in other.values.items():
            s = self.group.add(out.get(f, zero), g)
            if s == zero:
                out.pop(f, None)
            else:
                out[f] = s
        return Cochain._raw(self.complex, self.k, self.group, out)

    def __neg__(self) -> Cochain:
        return Cochain._raw(self.complex, self.k, self.group,
                            {f: self.group.neg(g) for f, g in self.values.items()})

    def __sub__(self, other: Cochain) -> Cochain:
        return self + (-other)


def permutation_parity(seq) -> int:
    """0 if sorting ``seq`` takes an even number of transpositions, else 1."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return inv & 1


def evaluate(f: Cochain, ordered_face) -> tuple[int, ...]:
    """Value of ``f`` on an ordered face, using antisymmetry."""
    ordered = tuple(ordered_face)
    face = canonical(ordered)
    if len(face) != f.k + 1 or not f.complex.has_face(face):
        raise NotAFaceError(face, f"{ordered!r} is not an ordered {f.k}-face")
    val = f.values.get(face, f.group.zero)
    if permutation_parity(ordered):
        val = f.group.neg(val)
    return val


def coboundary(f: Cochain) -> Cochain:
    """delta f(v_0..v_{k+1}) = sum_i (-1)^i f(face without v_i)."""
    X = f.complex
    if f.k >= X.dimension:
        raise DimensionError(f"coboundary of a {f.k}-cochain needs dimension > {f.k}, complex has {X.dimension}")
    G = f.group
    zero = G.zero
    cof = X.cofaces(f.k)
    out: dict = {}
    for face, val in f.values.items():
        neg = G.neg(val)
        for big, pos in cof[face]:
            out[big] = G.add(out.get(big, zero), neg if pos & 1 else val)
    return Cochain._raw(X, f.k + 1, G, {b: g for b, g in out.items() if g != zero})


def _resolve_distribution(f: Cochain, P: FaceDistribution | None) -> Mapping:
    if P is None:
        return f.complex.distribution(f.k).probs
    if P.dimension != f.k:
        raise DimensionError(f"distribution is over {P.dimension}-faces, cochain has k={f.k}")
    return P.probs


def weight(f: Cochain, P: FaceDistribution | None = None) -> Fraction:
    """Probability that a P_k-random k-face lies in supp(f)."""
    probs = _resolve_distribution(f, P)
    return sum((probs[s] for s in f.values), Fraction(0))


def distance(f: Cochain, g: Cochain, P: FaceDistribution | None = None) -> Fraction:
    f._check_compatible(g)
    return weight(f - g, P)


def localize(f: Cochain, sigma) -> Cochain:
    """f_sigma(tau) = f(sigma tau) as a cochain on the link of sigma."""
    base = canonical(sigma)
    if not base:
        return f
    X = f.complex
    if not X.has_face(base):
        raise NotAFaceError(base)
    ell = len(base) - 1
    if ell > f.k - 1:
        raise DimensionError(f"localizing a {f.k}-cochain needs a face of dimension <= {f.k - 1}, got {ell}")
    lk = link(X, base).complex
    s = set(base)
    G = f.group
    out = {}
    for face, val in f.values.items():
        if s.issubset(face):
            tau = tuple(v for v in face if v not in s)
            out[tau] = G.neg(val) if permutation_parity(base + tau) else val
    return Cochain._raw(lk, f.k - ell - 1, G, out)


def outside_restriction_weight(f: Cochain, sigma) -> Fraction:
    """Weight of f restricted to the outside pairs of sigma, i.e. ||f^sigma||."""
    pairs = outside_pairs(f.complex, sigma, f.k)
    vals = f.values
    return sum((p.prob for p in pairs.pairs if p.realized in vals), Fraction(0))


def count_cochains(X: SimplicialComplex, k: int, G: FiniteAbelianGroup,
                   max_support: int | None = None) -> int:
    n = len(X.faces(k))
    if max_support is None:
        return G.order ** n
    m = min(max_support, n)
    return sum(comb(n, j) * (G.order - 1) ** j for j in range(m + 1))


def enumerate_cochains(X: SimplicialComplex, k: int, G: FiniteAbelianGroup,
                       budget: int | None = None) -> Iterator[Cochain]:
    """Every k-cochain exactly once, in lexicographic order of value vectors."""
    faces = X.faces(k)
    check_budget(f"C^{k} over {G}", count_cochains(X, k, G), budget)
    zero = G.zero
    elems = G.elements()
    for vals in product(elems, repeat=len(faces)):
        yield Cochain._raw(X, k, G, {f: v for f, v in zip(faces, vals) if v != zero})


def enumerate_cochains_bounded(X: SimplicialComplex, k: int, G: FiniteAbelianGroup,
                               max_support: int, budget: int | None = None) -> Iterator[Cochain]:
    """Cochains with at most ``max_support`` non-zero faces.

    Ordered by support size, then support (lexicographic), then values.
    """
    faces = X.faces(k)
    check_budget(f"C^{k} over {G} with support <= {max_support}",
                 count_cochains(X, k, G, max_support), budget)
    nonzero = G.nonzero_elements()
    for size in range(min(max_support, len(faces)) + 1):
        for supp in combinations(faces, size):
            for vals in product(nonzero, repeat=size):
                yield Cochain._raw(X, k, G, dict(zip(supp, vals)))


def coboundary_space(X: SimplicialComplex, k: int, G: FiniteAbelianGroup,
                     budget: int | None = None) -> tuple[Cochain, ...]:
    """B^k(X, G) as a tuple of distinct cochains, found by exhausting C^{k-1}.

    B^{-1} is the zero space.  The result is memoised on ``X``.
    """
    key = ("coboundaries", k, G)
    cached = X._cache.get(key)
    if cached is not None:
        return cached
    if k == -1:
        space = (Cochain.zero(X, -1, G),)
    else:
        seen = {}
        for g in enumerate_cochains(X, k - 1, G, budget):
            b = coboundary(g)
            seen.setdefault(b.key(), b)
        space = tuple(seen.values())
    X._cache[key] = space
    return space


def is_cocycle(f: Cochain) -> bool:
    # top-dimensional cochains have no cofaces, so they are cocycles
    if f.k == f.complex.dimension:
        return True
    return coboundary(f).is_zero()


def is_coboundary(f: Cochain, budget: int | None = None) -> bool:
    if f.is_zero():
        return True
    X = f.complex
    key = ("coboundary-keys", f.k, f.group)
    keys = X._cache.get(key)
    if keys is None:
        keys = frozenset(b.key() for b in coboundary_space(X, f.k, f.group, budget))
        X._cache[key] = keys
    return f.key() in keys
