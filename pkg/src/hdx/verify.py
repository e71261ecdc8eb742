"""Brute-force verification of the small-set expansion inequalities.

Every check returns a :class:`CheckRecord`.  Inequalities whose terms are
all rational are decided exactly; anything involving a floating-point
lambda or Euler's constant is compared in doubles with a tolerance.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from hdx.cochains import (
    Cochain,
    FiniteAbelianGroup,
    coboundary,
    enumerate_cochains_bounded,
    localize,
    outside_restriction_weight,
    weight,
)
from hdx.complex import SimplicialComplex, face_distribution, link
from hdx.errors import DimensionError
from hdx.expansion import (
    EIG_TOL,
    ExpansionConstants,
    expansion_constants,
    heavy_faces,
    non_minimal_links,
)

DEFAULT_TOL = 1e-9

PASS, FAIL, GATED = "pass", "fail", "gated"


@dataclass
class CheckRecord:
    """One evaluated inequality (or identity) with its verdict.

    ``relation`` reads ``lhs <relation> rhs``.  ``tolerance`` is ``None``
    when the comparison was exact.
    """

    check_id: str
    lhs: object = None
    rhs: object = None
    relation: str = ">="
    verdict: str = PASS
    tolerance: float | None = None
    params: dict = field(default_factory=dict)
    notes: str = ""
    details: dict = field(default_factory=dict)
    subchecks: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.tolerance is None

    @property
    def slack(self):
        if self.lhs is None or self.rhs is None:
            return None
        if self.relation == "<=":
            return self.rhs - self.lhs
        if self.relation == "==":
            return -abs(self.lhs - self.rhs)
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def gated(self) -> bool:
        return self.verdict == GATED

    def failures(self):
        """This record and every failing subcheck, depth first."""
        out = []
        if self.verdict == FAIL:
            out.append(self)
        for sub in self.subchecks:
            out.extend(sub.failures())
        return out


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def compare(check_id, lhs, rhs, relation=">=", tol=DEFAULT_TOL, **params) -> CheckRecord:
    exact = _is_exact(lhs) and _is_exact(rhs)
    if exact:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        t = 0
    else:
        lhs, rhs = float(lhs), float(rhs)
        t = tol
    if relation == ">=":
        ok = lhs >= rhs - t
    elif relation == "<=":
        ok = lhs <= rhs + t
    elif relation == "==":
        ok = abs(lhs - rhs) <= t
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return CheckRecord(check_id, lhs, rhs, relation, PASS if ok else FAIL,
                       None if exact else tol, params)


def _finish(record: CheckRecord) -> CheckRecord:
    # a record passes only if its own comparison and all subchecks pass
    if record.verdict == PASS and any(s.verdict == FAIL for s in record.subchecks):
        record.verdict = FAIL
    return record


def _e_lambda(lam):
    return Fraction(0) if lam == 0 else math.e * lam


def _lam(lam):
    return Fraction(0) if lam == 0 else (lam if _is_exact(lam) else float(lam))


# ---------------------------------------------------------------- profiles

@dataclass(frozen=True)
class DeltaProfile:
    """``weights[i]`` is ||delta_i(f)||: (k+1)-faces with exactly i supported k-faces."""

    k: int
    weights: tuple

    def __getitem__(self, i):
        return self.weights[i]


def delta_profile(f: Cochain) -> DeltaProfile:
    X = f.complex
    if f.k > X.dimension - 1:
        raise DimensionError(f"delta profile needs k <= {X.dimension - 1}, got {f.k}")
    counts: dict = {}
    cof = X.cofaces(f.k)
    for face in f.values:
        for big, _ in cof[face]:
            counts[big] = counts.get(big, 0) + 1
    probs = X.distribution(f.k + 1).probs
    w = [Fraction(0)] * (f.k + 3)
    for big, c in counts.items():
        w[c] += probs[big]
    w[0] = 1 - sum(w[1:], Fraction(0))
    return DeltaProfile(f.k, tuple(w))


def localized_square_mean(f: Cochain, ell: int) -> Fraction:
    """E_{sigma in X(l)} ||f_sigma||^2; at l = -1 this is ||f||^2."""
    total = Fraction(0)
    for sigma, p in face_distribution(f.complex, ell).items():
        w = weight(localize(f, sigma))
        total += p * w * w
    return total


# ---------------------------------------------------------------- link averages

def check_coboundary_profile(f: Cochain, lam, tol: float = DEFAULT_TOL) -> CheckRecord:
    """||df|| >= (k+2)(||f|| - (k+1) lam ||f|| - (k+1) E_{X(k-1)} ||f_s||^2).

    Subchecks cover the partition of (k+1)-faces by supported-subface count,
    ||df|| >= ||delta_1 f||, the two link-averaging identities for
    delta_1 and delta_2, and the bound on ||delta_1 f|| they combine into.
    """
    X, k = f.complex, f.k
    if not 1 <= k <= X.dimension - 1:
        raise DimensionError(f"profile bound needs 1 <= k <= {X.dimension - 1}, got {k}")
    lam = _lam(lam)
    nf = weight(f)
    nd = weight(coboundary(f))
    sq = localized_square_mean(f, k - 1)
    rhs = (k + 2) * (nf - (k + 1) * lam * nf - (k + 1) * sq)
    rec = compare("coboundary_profile", nd, rhs, ">=", tol, k=k, lam=lam)

    prof = delta_profile(f)
    rec.subchecks.append(compare("coboundary_profile.partition", sum(prof.weights, Fraction(0)), 1, "=="))
    rec.subchecks.append(compare("coboundary_profile.delta_ge_delta1", nd, prof[1], ">="))

    pairs = Fraction(comb(k + 2, 2))
    mean_d1 = mean_d2 = Fraction(0)
    for rho, p in face_distribution(X, k - 1).items():
        lp = delta_profile(localize(f, rho))
        mean_d1 += p * lp[1]
        mean_d2 += p * lp[2]
    id1 = sum((Fraction(i * (k + 2 - i)) / pairs * prof[i] for i in range(1, k + 2)), Fraction(0))
    id2 = sum((Fraction(comb(i, 2)) / pairs * prof[i] for i in range(2, k + 3)), Fraction(0))
    rec.subchecks.append(compare("coboundary_profile.link_delta1_identity", mean_d1, id1, "=="))
    rec.subchecks.append(compare("coboundary_profile.link_delta2_identity", mean_d2, id2, "=="))
    rec.subchecks.append(compare("coboundary_profile.delta1_bound", prof[1],
                                 (k + 2) * (mean_d1 / 2 - k * mean_d2), ">="))
    rec.details = {"norm_f": nf, "norm_df": nd, "mean_sq_links": sq,
                   "delta_profile": list(prof.weights)}
    return _finish(rec)


def check_link_product(f: Cochain, ell: int, lam, tol: float = DEFAULT_TOL) -> CheckRecord:
    """E_{X(l)}[||f_s|| ||f^s||] <= E_{X(l-1)}[||f_s||^2] + lam ||f||.

    The subcheck re-derives the left side by averaging over X(l-1) and then
    over vertices of each link, which is exact.
    """
    X, k = f.complex, f.k
    if not 0 <= ell <= k - 1:
        raise DimensionError(f"link product bound needs 0 <= l <= {k - 1}, got {ell}")
    if k > X.dimension - 1:
        raise DimensionError(f"link product bound needs k <= {X.dimension - 1}, got {k}")
    lam = _lam(lam)
    lhs = Fraction(0)
    for sigma, p in face_distribution(X, ell).items():
        lhs += p * weight(localize(f, sigma)) * outside_restriction_weight(f, sigma)
    nf = weight(f)
    rhs = localized_square_mean(f, ell - 1) + lam * nf
    rec = compare("link_product", lhs, rhs, "<=", tol, ell=ell, k=k, lam=lam)

    via_links = Fraction(0)
    for sigma, p in face_distribution(X, ell - 1).items():
        fs = localize(f, sigma)
        lk = link(X, sigma).complex
        for (u,), pu in face_distribution(lk, 0).items():
            via_links += p * pu * weight(localize(fs, (u,))) * outside_restriction_weight(fs, (u,))
    rec.subchecks.append(compare("link_product.link_average_identity", lhs, via_links, "=="))
    return _finish(rec)


# ---------------------------------------------------------------- walks

@dataclass
class WalkOperators:
    """Walks on the j-faces of a link, with P_j as reference measure.

    ``a1, b1, a2, b2`` are exact row-stochastic matrices (lists of Fraction
    rows); the float products are what the spectral checks use.
    """

    base: tuple
    j: int
    faces: tuple
    vertices: tuple
    measure: tuple
    a1: list
    b1: list
    a2: list
    b2: list

    def _f(self, m):
        return np.array([[float(x) for x in row] for row in m])

    @staticmethod
    def _mul(a, b):
        cols = list(zip(*b))
        return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]

    def exact_products(self):
        """(B1A1, B2A2, A1B1, A2B2) in exact arithmetic."""
        return (self._mul(self.a1, self.b1), self._mul(self.a2, self.b2),
                self._mul(self.b1, self.a1), self._mul(self.b2, self.a2))

    def mixed(self) -> np.ndarray:
        b1a1 = self._f(self.a1) @ self._f(self.b1)
        b2a2 = self._f(self.a2) @ self._f(self.b2)
        return 0.5 * (b1a1 + b2a2)

    def mixed_lambda2(self) -> float:
        m = self.mixed()
        d = np.sqrt(np.array([float(p) for p in self.measure]))
        s = d[:, None] * m / d[None, :]
        s = 0.5 * (s + s.T)
        eig = np.linalg.eigvalsh(s)
        return float(eig[-2]) if len(eig) > 1 else -math.inf

    def mixed_pair_probability(self, support) -> Fraction:
        """Pr over a P_j-random face and one mixed-walk step that both ends lie in ``support``."""
        b1a1, b2a2, _, _ = self.exact_products()
        idx = [i for i, t in enumerate(self.faces) if t in support]
        total = Fraction(0)
        for i in idx:
            for jdx in idx:
                total += self.measure[i] * (b1a1[i][jdx] + b2a2[i][jdx]) / 2
        return total


def build_walk_operators(X: SimplicialComplex, sigma, j: int) -> WalkOperators:
    """Operators for walk #1 (face -> contained vertex -> completing face) and
    walk #2 (face -> completing vertex -> containing face) on X_sigma(j).

    Matrices are Markov kernels indexed [current state][next state], so
    walk #1 on faces is ``a1 @ b1`` and the vertex walk is ``b1 @ a1``.
    """
    lv = link(X, sigma)
    L = lv.complex
    if not 0 <= j <= L.dimension - 1:
        raise DimensionError(f"walks on j-faces need 0 <= j <= {L.dimension - 1}, got {j}")
    pj = face_distribution(L, j).probs
    pj1 = face_distribution(L, j + 1).probs
    p0 = face_distribution(L, 0).probs
    faces = tuple(pj)
    verts = tuple(v for (v,) in p0)
    fi = {t: i for i, t in enumerate(faces)}
    vi = {v: i for i, v in enumerate(verts)}
    z = Fraction(0)
    a1 = [[z] * len(verts) for _ in faces]
    b1 = [[z] * len(faces) for _ in verts]
    a2 = [[z] * len(verts) for _ in faces]
    b2 = [[z] * len(faces) for _ in verts]
    for t, i in fi.items():
        for u in t:
            a1[i][vi[u]] = Fraction(1, j + 1)
            b2[vi[u]][i] = pj[t] / ((j + 1) * p0[(u,)])
    for big, p in pj1.items():
        for pos, u in enumerate(big):
            t = big[:pos] + big[pos + 1:]
            b1[vi[u]][fi[t]] += p / ((j + 2) * p0[(u,)])
            a2[fi[t]][vi[u]] += p / ((j + 2) * pj[t])
    return WalkOperators(lv.base, j, faces, verts, tuple(pj[t] for t in faces), a1, b1, a2, b2)


def check_walk_operators(X: SimplicialComplex, sigma, j: int, lam,
                         tol: float = EIG_TOL) -> CheckRecord:
    """Stochasticity, A1B1 == A2B2 exactly, spectral duality, and mixed lambda_2 <= lam."""
    ops = build_walk_operators(X, sigma, j)
    b1a1, b2a2, a1b1, a2b2 = ops.exact_products()
    rec = CheckRecord("walk_operators", params={"sigma": tuple(sigma), "j": j, "lam": lam})
    for name, m in (("a1", ops.a1), ("b1", ops.b1), ("a2", ops.a2), ("b2", ops.b2)):
        bad = sum(1 for row in m if sum(row, Fraction(0)) != 1)
        rec.subchecks.append(compare(f"walk_operators.{name}_row_sums", bad, 0, "=="))
    mismatches = sum(1 for r1, r2 in zip(a1b1, a2b2) for x, y in zip(r1, r2) if x != y)
    rec.subchecks.append(compare("walk_operators.vertex_walks_equal", mismatches, 0, "=="))

    def nonzero_spectrum(m):
        ev = np.linalg.eigvals(np.array([[float(x) for x in row] for row in m]))
        return np.sort(ev.real[np.abs(ev) > 1e-7])

    s_face, s_vert = nonzero_spectrum(b1a1), nonzero_spectrum(a1b1)
    if len(s_face) == len(s_vert):
        gap = float(np.max(np.abs(s_face - s_vert))) if len(s_face) else 0.0
    else:
        gap = math.inf
    rec.subchecks.append(compare("walk_operators.spectral_duality", gap, 0.0, "<=", tol))
    lam2 = ops.mixed_lambda2()
    rec.subchecks.append(compare("walk_operators.mixed_lambda2", lam2, float(lam), "<=", tol))
    rec.details = {"mixed_lambda2": lam2, "faces": len(ops.faces), "vertices": len(ops.vertices)}
    return _finish(rec)


# ---------------------------------------------------------------- heavy faces

def _gate(check_id, reason, **params) -> CheckRecord:
    return CheckRecord(check_id, verdict=GATED, notes=reason, params=params, tolerance=None)


def _heavy_levels(f, beta, per_link_beta=None):
    return [heavy_faces(f, ell, beta, per_link_beta) for ell in range(f.k)]


def check_heavy_face_bound(f: Cochain, ell: int, beta, per_link_beta=None,
                           assume_locally_minimal: bool = False, budget=None) -> CheckRecord:
    """||df|| >= beta/(l+2) * E_{Heavy_l}[||f_s||] * ||Heavy_l||, for locally minimal f.

    Subchecks: the local-to-global implication (a non-zero local coboundary
    whose outside faces all vanish is a global coboundary) over every pair
    (sigma, tau), and the per-heavy-face bound it yields.
    """
    X, k = f.complex, f.k
    if not 0 <= ell <= k - 1:
        raise DimensionError(f"heavy face bound needs 0 <= l <= {k - 1}, got {ell}")
    if not assume_locally_minimal:
        bad = next(non_minimal_links(f, budget), None)
        if bad is not None:
            return _gate("heavy_face_bound", f"not locally minimal (at {bad})", ell=ell)
    hs = heavy_faces(f, ell, beta, per_link_beta)
    df = coboundary(f)
    nd = weight(df)
    probs = X.distribution(ell).probs
    if per_link_beta is None:
        rhs = beta * hs.mass / (ell + 2)
    else:
        rhs = sum((per_link_beta[s] * probs[s] * hs.table[s][0] for s in hs.faces), Fraction(0)) / (ell + 2)
    rec = compare("heavy_face_bound", nd, rhs, ">=", ell=ell, beta=beta,
                  per_link_beta=per_link_beta is not None)

    premises = violations = 0
    for sigma in X.faces(ell):
        fs = localize(f, sigma)
        dfs = coboundary(fs)
        if not dfs.values:
            continue
        for tau in dfs.values:
            whole = tuple(sorted(sigma + tau))
            outside_clear = all(
                tuple(sorted(sigma[:i] + sigma[i + 1:] + tau)) not in f.values
                for i in range(ell + 1)
            )
            if outside_clear:
                premises += 1
                if whole not in df.values:
                    violations += 1
    sub = compare("heavy_face_bound.local_to_global", violations, 0, "==")
    sub.details = {"premises": premises}
    rec.subchecks.append(sub)

    for sigma in hs.faces:
        lk = link(X, sigma).complex
        pk = face_distribution(lk, k - ell).probs
        hit = sum((p for tau, p in pk.items() if tuple(sorted(sigma + tau)) in df.values), Fraction(0))
        b = beta if per_link_beta is None else per_link_beta[sigma]
        rec.subchecks.append(compare("heavy_face_bound.heavy_face_local_bound", hit,
                                     b * hs.table[sigma][0] / (ell + 2), ">=", sigma=sigma))
    rec.details = {"heavy_faces": list(hs.faces), "heavy_weight": hs.weight, "heavy_mass": hs.mass}
    return _finish(rec)


def hypothesis_cap(k: int, beta, lam):
    """(1/(k+2) - lam) beta^k/(k+1)! - e lam."""
    lam = _lam(lam)
    return (Fraction(1, k + 2) - lam) * Fraction(beta) ** k / factorial(k + 1) - _e_lambda(lam)


def _heavy_mass_coeff(k, ell, beta):
    return Fraction((k + 1) * factorial(k + 2), factorial(ell + 2)) / Fraction(beta) ** (k - ell - 1)


def check_heavy_mass_bound(f: Cochain, beta, lam, per_link_beta=None, tol: float = DEFAULT_TOL,
                           heavy=None) -> CheckRecord:
    """||df|| >= ||f|| - sum_l (k+1)(k+2)!/(beta^{k-l-1}(l+2)!) E_{Heavy_l}[||f_s||] ||Heavy_l||.

    Gated when ||f|| exceeds the hypothesis cap.  Subchecks evaluate each
    step of the recursion on E_{X(l)}[||f_s||^2] separately.
    """
    X, k = f.complex, f.k
    if k > X.dimension - 1:
        raise DimensionError(f"heavy mass bound needs k <= {X.dimension - 1}, got {k}")
    lam = _lam(lam)
    nf = weight(f)
    cap = hypothesis_cap(k, beta, lam)
    hyp = compare("heavy_mass_bound.hypothesis", nf, cap, "<=", tol)
    if not hyp.passed:
        rec = _gate("heavy_mass_bound", "hypothesis fails: ||f|| above cap", beta=beta, lam=lam)
        rec.details = {"norm_f": nf, "cap": cap}
        return rec
    levels = heavy if heavy is not None else _heavy_levels(f, beta, per_link_beta)
    nd = weight(coboundary(f))
    rhs = nf - sum((_heavy_mass_coeff(k, h.level, beta) * h.mass for h in levels), Fraction(0))
    rec = compare("heavy_mass_bound", nd, rhs, ">=", tol, k=k, beta=beta, lam=lam)
    rec.subchecks.append(hyp)
    sharp = nf - sum((_heavy_mass_coeff(k, h.level, beta) * h.mass_sq for h in levels), Fraction(0))
    rec.subchecks.append(compare("heavy_mass_bound.squared_form", nd, sharp, ">=", tol))

    a = {-1: nf * nf}
    for ell in range(k):
        a[ell] = localized_square_mean(f, ell)
    b = Fraction(beta)
    for h in levels:
        ell = h.level
        rec.subchecks.append(compare(
            "heavy_mass_bound.one_level_step", a[ell],
            Fraction(ell + 2) / b * (a[ell - 1] + lam * nf) + h.mass_sq, "<=", tol, ell=ell))
    tail = sum((Fraction(factorial(k + 1), factorial(h.level + 2)) / b ** (k - h.level - 1) * h.mass_sq
                for h in levels), Fraction(0))
    scale = Fraction(factorial(k + 1)) / b ** k
    unrolled = scale * (nf * nf + sum((b ** ell / factorial(ell + 1) for ell in range(k)), Fraction(0))
                        * lam * nf) + tail
    rec.subchecks.append(compare("heavy_mass_bound.unrolled", a[k - 1], unrolled, "<=", tol))
    rec.subchecks.append(compare("heavy_mass_bound.euler_relaxation", a[k - 1],
                                 scale * (nf + _e_lambda(lam)) * nf + tail, "<=", tol))
    rec.subchecks.append(compare("heavy_mass_bound.cap_substitution", a[k - 1],
                                 (Fraction(1, k + 2) - lam) * nf + tail, "<=", tol))
    rec.details = {"norm_f": nf, "cap": cap,
                   "heavy_mass": {h.level: h.mass for h in levels}}
    return _finish(rec)


# ---------------------------------------------------------------- expansion bound

def expansion_constant(k: int, beta) -> Fraction:
    """beta^k / (k! (k+1)^4)."""
    return Fraction(beta) ** k / (factorial(k) * (k + 1) ** 4)


def check_small_set_expansion(f: Cochain, constants: ExpansionConstants | None = None,
                              clamp: bool = True, per_link: bool = False,
                              tol: float = DEFAULT_TOL, budget=None) -> CheckRecord:
    """Locally minimal f below the weight cap satisfies ||df|| >= beta^k/(k!(k+1)^4) ||f||.

    Also records the branch ("local" when some level's heavy mass reaches
    its threshold, "global" otherwise), checks that branch's sharper bound,
    and attaches the heavy-face or heavy-mass record it relies on.
    """
    X, k = f.complex, f.k
    if k > X.dimension - 1:
        raise DimensionError(f"expansion bound needs k <= {X.dimension - 1}, got {k}")
    c = constants or expansion_constants(X, f.group, budget)
    beta = c.effective_beta(clamp)
    lam = c.lam
    params = {"k": k, "beta": beta, "beta_raw": c.beta, "lam": lam, "clamped": clamp,
              "per_link_beta": per_link}
    bad = next(non_minimal_links(f, budget), None)
    if bad is not None:
        return _gate("small_set_expansion", f"not locally minimal (at {bad})", **params)
    nf = weight(f)
    cap = hypothesis_cap(k, beta, lam)
    if not compare("cap", nf, cap, "<=", tol).passed:
        rec = _gate("small_set_expansion", "hypothesis fails: ||f|| above cap", **params)
        rec.details = {"norm_f": nf, "cap": cap}
        return rec

    nd = weight(coboundary(f))
    const = expansion_constant(k, beta)
    rec = compare("small_set_expansion", nd, const * nf, ">=", tol, **params)
    per = c.beta_per_link if per_link else None
    levels = _heavy_levels(f, beta, per)
    b = Fraction(beta)
    denom = k * (k + 1) * factorial(k + 2) + b ** k
    branch, level = "global", None
    for h in levels:
        threshold = b ** (k - h.level - 1) * factorial(h.level + 2) / denom * nf
        if h.mass >= threshold:
            branch, level = "local", h.level
            break
    if branch == "local":
        bound = b ** (k - level) * factorial(level + 1) / denom * nf
        rec.subchecks.append(compare("small_set_expansion.case_bound", nd, bound, ">=", tol, branch=branch, ell=level))
        rec.subchecks.append(check_heavy_face_bound(f, level, beta, per, assume_locally_minimal=True))
    else:
        bound = b ** k / denom * nf
        rec.subchecks.append(compare("small_set_expansion.case_bound", nd, bound, ">=", tol, branch=branch))
        rec.subchecks.append(check_heavy_mass_bound(f, beta, lam, per, tol, heavy=levels))
    rec.details = {"norm_f": nf, "norm_df": nd, "cap": cap, "constant": const,
                   "branch": branch, "branch_level": level, "case_bound": bound}
    if clamp and c.beta != beta and c.beta != math.inf:
        raw_cap = hypothesis_cap(k, c.beta, lam)
        raw_const = expansion_constant(k, c.beta)
        rec.details["raw_beta"] = {
            "cap": raw_cap,
            "constant": raw_const,
            "applicable": compare("cap", nf, raw_cap, "<=", tol).passed,
            "holds": compare("raw", nd, raw_const * nf, ">=", tol).passed,
        }
    return _finish(rec)


# ---------------------------------------------------------------- scans

@dataclass
class ScanResult:
    records: list
    summary: dict


def sample_cochains(X: SimplicialComplex, k: int, G: FiniteAbelianGroup, n: int, seed: int,
                    max_support: int | None = None) -> list[Cochain]:
    """``n`` cochains: a uniform support size, a uniform support of that size,
    then uniform non-zero values, all drawn from ``random.Random(seed)``."""
    faces = X.faces(k)
    top = len(faces) if max_support is None else min(max_support, len(faces))
    rng = random.Random(seed)
    nonzero = G.nonzero_elements()
    out = []
    for _ in range(n):
        size = rng.randint(1, top)
        supp = sorted(rng.sample(faces, size))
        out.append(Cochain._raw(X, k, G, {s: rng.choice(nonzero) for s in supp}))
    return out


_worker_state: dict = {}


def _init_worker(X, constants, clamp, per_link, tol):
    _worker_state.update(X=X, constants=constants, clamp=clamp, per_link=per_link, tol=tol)


def _check_chunk(chunk):
    st = _worker_state
    X = st["X"]
    out = []
    for idx, k, group, items in chunk:
        f = Cochain._raw(X, k, group, dict(items))
        out.append((idx, check_small_set_expansion(f, st["constants"], st["clamp"], st["per_link"], st["tol"])))
    return out


def scan_expansion(X: SimplicialComplex, G: FiniteAbelianGroup, k: int,
                 max_support: int | None = None, sample: tuple[int, int] | None = None,
                 clamp: bool = True, per_link: bool = False, tol: float = DEFAULT_TOL,
                 workers: int = 1, budget=None) -> ScanResult:
    """Run :func:`check_small_set_expansion` over non-zero cochains.

    Exhaustive over support size ``1..max_support`` unless ``sample=(n, seed)``.
    Results are merged in candidate order, so they do not depend on ``workers``.
    """
    n_faces = len(X.faces(k))
    limit = n_faces if max_support is None else min(max_support, n_faces)
    if sample is None:
        candidates = [f for f in enumerate_cochains_bounded(X, k, G, limit, budget) if f.values]
    else:
        n, seed = sample
        candidates = sample_cochains(X, k, G, n, seed, limit)
    constants = expansion_constants(X, G, budget)
    payload = [(i, f.k, f.group, tuple(f.values.items())) for i, f in enumerate(candidates)]
    if workers <= 1:
        _init_worker(X, constants, clamp, per_link, tol)
        results = _check_chunk(payload)
    else:
        size = max(1, len(payload) // (workers * 4))
        chunks = [payload[i:i + size] for i in range(0, len(payload), size)]
        with ProcessPoolExecutor(workers, initializer=_init_worker,
                                 initargs=(X, constants, clamp, per_link, tol)) as pool:
            results = [r for part in pool.map(_check_chunk, chunks) for r in part]
    results.sort(key=lambda r: r[0])
    summary = {"candidates": len(candidates), "applicable": 0, "passed": 0, "failed": 0,
               "gated_not_locally_minimal": 0, "gated_hypothesis": 0,
               "branch_local": 0, "branch_global": 0, "max_support": limit,
               "max_support_clamped": max_support is not None and max_support > n_faces}
    records = []
    for idx, rec in results:
        rec.params["candidate"] = idx
        rec.params["support"] = [list(s) for s in candidates[idx].values]
        if rec.gated:
            key = "gated_not_locally_minimal" if rec.notes.startswith("not locally") else "gated_hypothesis"
            summary[key] += 1
            continue
        summary["applicable"] += 1
        summary["passed" if rec.passed else "failed"] += 1
        summary["branch_" + rec.details["branch"]] += 1
        records.append(rec)
    return ScanResult(records, summary)
