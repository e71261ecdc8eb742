"""Regenerate ``data/oracle_values.json`` from the brute-force oracles.

Run once by hand (``python tests/freeze_oracles.py``); the test suite only
reads the frozen file and re-checks a few entries against the oracles.
"""

import json
from fractions import Fraction
from pathlib import Path

import oracles as o

TWO_TRIANGLES = {(1, 2, 3): 1, (1, 2, 4): 1}
TRIANGLE = {(0, 1, 2): 1}


def s(x):
    return f"{x.numerator}/{x.denominator}"


def table(d):
    return {",".join(map(str, k)): s(v) for k, v in sorted(d.items())}


def build():
    k7 = o.complete_tops(7, 2)
    edge = {(1, 2): 1}
    out = {
        "two_triangles_p1": table(o.face_prob(TWO_TRIANGLES, 1)),
        "two_triangles_p0": table(o.face_prob(TWO_TRIANGLES, 0)),
        "two_triangles_link_12": table(o.link_prob(TWO_TRIANGLES, (1, 2), 0)),
        "complete_4_2_link_0_edges": table(o.link_prob(o.complete_tops(4, 2), (0,), 1)),
        "cut_beta": {str(m): s(o.cut_beta_complete_graph(m)) for m in range(3, 9)},
        "closed_form_beta": {str(m): s(o.complete_graph_beta_closed_form(m)) for m in range(3, 9)},
        "naive_beta": {
            "triangle_k0_z2": s(o.naive_beta(TRIANGLE, 0, 2)),
            "triangle_k0_z3": s(o.naive_beta(TRIANGLE, 0, 3)),
            "complete_4_1_k0_z2": s(o.naive_beta(o.complete_tops(4, 1), 0, 2)),
            "complete_4_2_k0_z2": s(o.naive_beta(o.complete_tops(4, 2), 0, 2)),
            "complete_4_2_k1_z2": s(o.naive_beta(o.complete_tops(4, 2), 1, 2)),
            "two_triangles_k1_z2": s(o.naive_beta(TWO_TRIANGLES, 1, 2)),
        },
        "edge_on_complete_7_2": {
            "weight": s(o.naive_weight(edge, o.face_prob(k7, 1))),
            "coboundary_weight": s(o.triangles_through_edge(7)),
            "localized": {str(v): s(o.localized_weight(k7, edge, (v,), 1)) for v in range(7)},
            "outside": {str(v): s(o.outside_weight(k7, edge, (v,), 1)) for v in range(7)},
        },
        "vertex_star_weight": {str(n): s(o.vertex_star_weight(n)) for n in range(4, 9)},
        "lambda2_complete_graph": {str(m): o.complete_graph_lambda2(m) for m in range(3, 11)},
    }
    mean_sq = sum((Fraction(1, 7) * o.localized_weight(k7, edge, (v,), 1) ** 2 for v in range(7)), Fraction(0))
    out["edge_on_complete_7_2"]["profile_rhs_lambda0"] = s(3 * (Fraction(1, 21) - 2 * mean_sq))
    return out


if __name__ == "__main__":
    path = Path(__file__).parent / "data" / "oracle_values.json"
    path.write_text(json.dumps(build(), indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
