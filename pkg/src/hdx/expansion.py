"""Coboundary expansion, local spectral expansion, minimality, heavy faces."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

import numpy as np

from hdx.cochains import (
    Cochain,
    FiniteAbelianGroup,
    coboundary,
    coboundary_space,
    count_cochains,
    enumerate_cochains,
    localize,
    outside_restriction_weight,
    weight,
)
from hdx.complex import Face, SimplicialComplex, WeightedGraph, link, underlying_graph
from hdx.errors import DimensionError, InputError, check_budget

INF = math.inf
EIG_TOL = 1e-9


def coboundary_expansion(X: SimplicialComplex, G: FiniteAbelianGroup, k: int,
                         budget: int | None = None):
    """min over f not in B^k of ||delta f|| / dist(f, B^k), exactly.

    Returns ``math.inf`` when every k-cochain is a coboundary.
    """
    if not 0 <= k <= X.dimension - 1:
        raise DimensionError(f"coboundary expansion needs 0 <= k <= {X.dimension - 1}, got {k}")
    key = ("beta", k, G)
    if key in X._cache:
        return X._cache[key]
    check_budget(f"C^{k} over {G}", count_cochains(X, k, G), budget)
    space = coboundary_space(X, k, G, budget)
    keys = {b.key() for b in space}
    probs = X.distribution(k).probs
    best = INF
    for f in enumerate_cochains(X, k, G, budget):
        if f.key() in keys:
            continue
        num = weight(coboundary(f))
        if best != INF and num >= best:
            # dist <= 1, so this cochain cannot beat the current minimum
            continue
        dist = min(_weight_of_difference(f, b, probs) for b in space)
        ratio = num / dist
        if ratio < best:
            best = ratio
    X._cache[key] = best
    return best


def _weight_of_difference(f: Cochain, g: Cochain, probs) -> Fraction:
    fv, gv = f.values, g.values
    total = Fraction(0)
    for face, val in fv.items():
        if gv.get(face) != val:
            total += probs[face]
    for face in gv:
        if face not in fv:
            total += probs[face]
    return total


def link_beta(X: SimplicialComplex, sigma: Face, G: FiniteAbelianGroup,
              budget: int | None = None):
    """Coboundary expansion of X_sigma, minimised over all valid cochain dimensions."""
    lk = link(X, sigma).complex
    values = [coboundary_expansion(lk, G, j, budget) for j in range(lk.dimension)]
    return min(values, default=INF)


@dataclass
class ExpansionConstants:
    beta: object = INF
    beta_clamped: Fraction = Fraction(1)
    lambda_raw: float = -INF
    lam: object = Fraction(0)
    beta_per_link: dict = field(default_factory=dict)
    lambda_per_link: dict = field(default_factory=dict)
    disconnected_links: list = field(default_factory=list)
    beta_vacuous: bool = False

    def effective_beta(self, clamp: bool = True):
        return self.beta_clamped if clamp else self.beta


def clamp_beta(beta) -> Fraction:
    return Fraction(1) if beta == INF or beta > 1 else beta


def min_link_coboundary_expansion(X: SimplicialComplex, G: FiniteAbelianGroup,
                                  budget: int | None = None) -> ExpansionConstants:
    """Uniform beta: min over links of faces of dimension 0..d-2."""
    per = {}
    for ell in range(0, X.dimension - 1):
        for sigma in X.faces(ell):
            per[sigma] = link_beta(X, sigma, G, budget)
    beta = min(per.values(), default=INF)
    return ExpansionConstants(beta=beta, beta_clamped=clamp_beta(beta),
                              beta_per_link=per, beta_vacuous=not per)


def second_eigenvalue(graph: WeightedGraph) -> float:
    """Second largest eigenvalue of the normalised adjacency operator.

    A disconnected graph reports exactly 1.0.
    """
    if len(graph.vertices) < 2:
        return -INF
    if not graph.is_connected():
        return 1.0
    eig = np.linalg.eigvalsh(graph.normalized_adjacency())
    return float(eig[-2])


def local_spectral_lambda(X: SimplicialComplex) -> ExpansionConstants:
    """max lambda_2 over underlying graphs of links of faces in X(-1..d-2)."""
    if X.dimension < 1:
        raise DimensionError("local spectral expansion needs dimension >= 1")
    per = {}
    disconnected = []
    for ell in range(-1, X.dimension - 1):
        for sigma in X.faces(ell):
            g = underlying_graph(link(X, sigma).complex)
            per[sigma] = second_eigenvalue(g)
            if not g.is_connected():
                disconnected.append(sigma)
    raw = max(per.values())
    lam = Fraction(0) if raw <= 0 else raw
    return ExpansionConstants(lambda_raw=raw, lam=lam, lambda_per_link=per,
                              disconnected_links=disconnected)


def expansion_constants(X: SimplicialComplex, G: FiniteAbelianGroup,
                        budget: int | None = None) -> ExpansionConstants:
    key = ("constants", G)
    if key in X._cache:
        return X._cache[key]
    b = min_link_coboundary_expansion(X, G, budget)
    s = local_spectral_lambda(X)
    out = ExpansionConstants(
        beta=b.beta, beta_clamped=b.beta_clamped, lambda_raw=s.lambda_raw, lam=s.lam,
        beta_per_link=b.beta_per_link, lambda_per_link=s.lambda_per_link,
        disconnected_links=s.disconnected_links, beta_vacuous=b.beta_vacuous,
    )
    X._cache[key] = out
    return out


def is_minimal(f: Cochain, budget: int | None = None) -> bool:
    """||f|| <= ||f - g|| for every coboundary g."""
    if f.is_zero():
        return True
    w = weight(f)
    probs = f.complex.distribution(f.k).probs
    return all(_weight_of_difference(f, b, probs) >= w
               for b in coboundary_space(f.complex, f.k, f.group, budget))


def non_minimal_links(f: Cochain, budget: int | None = None):
    """Yield the non-empty faces sigma (dimension 0..k-1) where f_sigma is not minimal."""
    for ell in range(0, f.k):
        touched = set()
        for face in f.values:
            touched.update(combinations(face, ell + 1))
        # links of faces f never touches localise to zero, which is minimal
        for sigma in sorted(touched):
            if not is_minimal(localize(f, sigma), budget):
                yield sigma


def is_locally_minimal(f: Cochain, budget: int | None = None) -> bool:
    for _ in non_minimal_links(f, budget):
        return False
    return True


@dataclass(frozen=True)
class HeavyFaceSet:
    """Heavy l-faces of a cochain with their aggregates.

    ``mass`` is sum P_l(sigma) ||f_sigma|| over heavy sigma, which equals
    E_{Heavy}[||f_sigma||] * ||Heavy||; ``mass_sq`` uses ||f_sigma||^2.
    ``table`` maps every l-face to (||f_sigma||, ||f^sigma||, heavy?).
    """

    level: int
    faces: tuple
    weight: Fraction
    mass: Fraction
    mass_sq: Fraction
    table: Mapping

    @property
    def conditional_mean(self) -> Fraction:
        return self.mass / self.weight if self.weight else Fraction(0)


def _threshold_factor(ell: int, beta) -> Fraction:
    if beta == INF:
        return Fraction(0)
    if not beta > 0:
        raise InputError(f"beta must be positive, got {beta}")
    return Fraction(ell + 2) / beta


def heavy_faces(f: Cochain, ell: int, beta, per_link_beta: Mapping | None = None) -> HeavyFaceSet:
    """Faces sigma in X(l) with ||f_sigma|| > (l+2)/beta * ||f^sigma|| (strict).

    With ``per_link_beta`` each sigma uses its own link's expansion instead.
    """
    if not 0 <= ell <= f.k - 1:
        raise DimensionError(f"heavy faces need 0 <= l <= {f.k - 1}, got {ell}")
    if per_link_beta is None:
        factor = _threshold_factor(ell, beta)
    X = f.complex
    probs = X.distribution(ell).probs
    table = {}
    heavy = []
    w = mass = mass_sq = Fraction(0)
    for sigma in X.faces(ell):
        local = weight(localize(f, sigma))
        outside = outside_restriction_weight(f, sigma)
        if per_link_beta is not None:
            factor = _threshold_factor(ell, per_link_beta[sigma])
        is_heavy = local > factor * outside
        table[sigma] = (local, outside, is_heavy)
        if is_heavy:
            p = probs[sigma]
            heavy.append(sigma)
            w += p
            mass += p * local
            mass_sq += p * local * local
    return HeavyFaceSet(ell, tuple(heavy), w, mass, mass_sq, table)


@dataclass(frozen=True)
class CheegerViolation:
    subset: tuple
    inequality: str
    lhs: float
    rhs: float


def cheeger_check(graph: WeightedGraph, lam, tol: float = EIG_TOL,
                  max_vertices: int = 20) -> list[CheegerViolation]:
    """Check both edge-count inequalities of a lambda-one-sided expander on every subset.

    ``cut``:  ||E(S, S^c)|| >= 2 (1 - lam) ||S|| ||S^c||
    ``inner``: ||E(S, S)|| <= ||S||^2 + lam ||S||
    """
    n = len(graph.vertices)
    if n > max_vertices:
        raise InputError(f"cheeger_check exhausts 2^n subsets; n={n} exceeds cap {max_vertices}")
    lam = float(lam)
    index = {v: i for i, v in enumerate(graph.vertices)}
    p0 = np.array([float(graph.vertex_weights[v]) for v in graph.vertices])
    eu = np.array([index[a] for a, _ in graph.edges], dtype=np.int64)
    ev = np.array([index[b] for _, b in graph.edges], dtype=np.int64)
    ew = np.array([float(graph.edge_weights[e]) for e in graph.edges])
    violations = []
    chunk = 1 << 14
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(bool)
        s = bits @ p0
        in_u, in_v = bits[:, eu], bits[:, ev]
        cut = (in_u ^ in_v) @ ew
        inner = (in_u & in_v) @ ew
        cut_rhs = 2.0 * (1.0 - lam) * s * (1.0 - s)
        inner_rhs = s * s + lam * s
        for idx in np.nonzero(cut < cut_rhs - tol)[0]:
            violations.append(CheegerViolation(_subset(graph, bits[idx]), "cut",
                                               float(cut[idx]), float(cut_rhs[idx])))
        for idx in np.nonzero(inner > inner_rhs + tol)[0]:
            violations.append(CheegerViolation(_subset(graph, bits[idx]), "inner",
                                               float(inner[idx]), float(inner_rhs[idx])))
    return violations


def _subset(graph, row):
    return tuple(v for v, b in zip(graph.vertices, row) if b)
