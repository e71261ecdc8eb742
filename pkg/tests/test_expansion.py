import math
from fractions import Fraction

import pytest

import oracles
from conftest import TWO_TRIANGLES, Z2, Z3, frac
from hdx import Cochain, build_complex, complete_complex, link, localize, underlying_graph
from hdx.expansion import (
    cheeger_check,
    coboundary_expansion,
    expansion_constants,
    heavy_faces,
    is_locally_minimal,
    is_minimal,
    local_spectral_lambda,
    min_link_coboundary_expansion,
    second_eigenvalue,
)
from hdx.errors import DimensionError, InputError
from hdx.generators import generate


@pytest.mark.parametrize("m", range(3, 9))
def test_complete_graph_beta(m, frozen):
    X = complete_complex(m, 1)
    beta = coboundary_expansion(X, Z2, 0)
    assert beta == frac(frozen["cut_beta"][str(m)]) == frac(frozen["closed_form_beta"][str(m)])


@pytest.mark.parametrize("key,tops,k,m", [
    ("triangle_k0_z2", {(0, 1, 2): 1}, 0, 2),
    ("triangle_k0_z3", {(0, 1, 2): 1}, 0, 3),
    ("complete_4_1_k0_z2", oracles.complete_tops(4, 1), 0, 2),
    ("complete_4_2_k0_z2", oracles.complete_tops(4, 2), 0, 2),
    ("complete_4_2_k1_z2", oracles.complete_tops(4, 2), 1, 2),
    ("two_triangles_k1_z2", TWO_TRIANGLES, 1, 2),
])
def test_beta_matches_naive_double_loop(key, tops, k, m, frozen):
    X = build_complex(list(tops.items()))
    G = Z2 if m == 2 else Z3
    assert coboundary_expansion(X, G, k) == frac(frozen["naive_beta"][key])


def test_triangle_top_level_beta_matches_oracle():
    X = complete_complex(3, 2)
    assert coboundary_expansion(X, Z2, 1) == oracles.naive_beta({(0, 1, 2): 1}, 1, 2)
    with pytest.raises(DimensionError):
        coboundary_expansion(X, Z2, 2)


def test_uniform_beta_examples():
    assert min_link_coboundary_expansion(complete_complex(7, 2), Z2).beta == Fraction(6, 5)
    c = min_link_coboundary_expansion(complete_complex(5, 2), Z2)
    assert c.beta == Fraction(4, 3) and c.beta_clamped == 1
    c = min_link_coboundary_expansion(complete_complex(5, 1), Z2)
    assert c.beta == math.inf and c.beta_vacuous and c.beta_clamped == 1


def test_complete_complex_constants():
    c = expansion_constants(complete_complex(7, 2), Z2)
    assert c.beta == Fraction(6, 5) and c.beta_clamped == 1
    assert c.lambda_raw == pytest.approx(-1 / 6, abs=1e-9)
    assert c.lam == 0 and isinstance(c.lam, Fraction)
    assert c.lambda_per_link[()] == pytest.approx(-1 / 6, abs=1e-9)
    assert c.lambda_per_link[(0,)] == pytest.approx(-1 / 5, abs=1e-9)
    assert not c.disconnected_links


@pytest.mark.parametrize("m", range(3, 11))
def test_complete_graph_spectrum(m, frozen):
    g = underlying_graph(complete_complex(m, 1))
    assert abs(second_eigenvalue(g) - frozen["lambda2_complete_graph"][str(m)]) <= 1e-9


def test_single_triangle_lambda():
    c = local_spectral_lambda(complete_complex(3, 2))
    assert c.lambda_raw == pytest.approx(-0.5) and c.lam == 0


def test_bowtie_disconnected_link_flagged():
    X, _ = generate("bowtie")
    c = local_spectral_lambda(X)
    assert c.lambda_per_link[()] == pytest.approx(0.5)
    assert c.lambda_per_link[(0,)] == 1.0
    assert (0,) in c.disconnected_links
    assert c.lam == 1.0


def test_minimality_examples(k7, star, edge):
    assert is_minimal(Cochain.zero(k7, 1, Z2))
    assert not is_minimal(localize(star, (0,)))
    K6 = link(k7, (0,)).complex
    assert is_minimal(Cochain.indicator(K6, 0, Z2, [(1,)]))
    assert not is_locally_minimal(star)
    assert is_locally_minimal(edge)
    assert is_locally_minimal(Cochain.zero(k7, 1, Z2))


def test_heavy_faces_examples(k7, star, edge):
    h = heavy_faces(Cochain.zero(k7, 1, Z2), 0, Fraction(1))
    assert h.faces == () and h.weight == h.mass == h.conditional_mean == 0

    h = heavy_faces(star, 0, Fraction(1))
    assert h.table[(0,)] == (1, 0, True)
    assert (0,) in h.faces
    # each other vertex sees one supported edge in its link and a nonzero outside weight
    for v in range(1, 7):
        local, outside, heavy = h.table[(v,)]
        assert local == Fraction(1, 6)
        assert heavy == (local > 2 * outside)

    h = heavy_faces(edge, 0, Fraction(1))
    assert h.faces == ((1,), (2,))
    assert h.weight == Fraction(2, 7) and h.mass == Fraction(1, 21)
    assert h.conditional_mean == Fraction(1, 6)
    with pytest.raises(InputError):
        heavy_faces(edge, 0, Fraction(0))
    with pytest.raises(DimensionError):
        heavy_faces(edge, 1, Fraction(1))


def test_heavy_faces_strict_inequality():
    # a 2-edge path: at its middle vertex local = 2/6, outside = 0 -> heavy; at ends compare exactly
    X = complete_complex(7, 2)
    f = Cochain.indicator(X, 1, Z2, [(0, 1), (0, 2)])
    h = heavy_faces(f, 0, Fraction(6, 5))
    for sigma, (local, outside, heavy) in h.table.items():
        assert heavy == (local > Fraction(2) / Fraction(6, 5) * outside)


def test_per_link_beta_mode():
    X = complete_complex(7, 2)
    f = Cochain.indicator(X, 1, Z2, [(0, 1)])
    c = expansion_constants(X, Z2)
    a = heavy_faces(f, 0, c.beta, c.beta_per_link)
    b = heavy_faces(f, 0, c.beta)
    # every link is K_6, so per-link and uniform agree here
    assert a.faces == b.faces


def test_cheeger_examples():
    g = underlying_graph(complete_complex(5, 1))
    assert cheeger_check(g, 0) == []
    X, _ = generate("bowtie")
    assert cheeger_check(underlying_graph(X), 0.5) == []
    # a deliberately too-small lambda must be caught on a graph with a bottleneck
    assert cheeger_check(underlying_graph(X), 0.0)
    with pytest.raises(InputError):
        cheeger_check(underlying_graph(complete_complex(21, 1)), 0)
