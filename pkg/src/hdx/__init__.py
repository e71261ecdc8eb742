"""Small-set expansion machinery for weighted simplicial complexes.

Exact-rational face distributions, cochains over finite abelian groups,
coboundary and local spectral expansion, heavy faces, and brute-force
verifiers for the small-set expansion inequalities on desk-scale complexes.
"""

from hdx.complex import (
    FaceDistribution,
    LinkView,
    OutsidePairSet,
    SimplicialComplex,
    WeightedGraph,
    build_complex,
    complete_complex,
    face_distribution,
    link,
    outside_pairs,
    underlying_graph,
)
from hdx.cochains import (
    Cochain,
    FiniteAbelianGroup,
    coboundary,
    distance,
    enumerate_cochains,
    enumerate_cochains_bounded,
    evaluate,
    is_coboundary,
    is_cocycle,
    localize,
    outside_restriction_weight,
    weight,
)
from hdx.errors import (
    BudgetExceeded,
    DimensionError,
    HDXError,
    InputError,
    NotAFaceError,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Cochain",
    "DimensionError",
    "FaceDistribution",
    "FiniteAbelianGroup",
    "HDXError",
    "InputError",
    "LinkView",
    "NotAFaceError",
    "OutsidePairSet",
    "SimplicialComplex",
    "WeightedGraph",
    "build_complex",
    "coboundary",
    "complete_complex",
    "distance",
    "enumerate_cochains",
    "enumerate_cochains_bounded",
    "evaluate",
    "face_distribution",
    "is_coboundary",
    "is_cocycle",
    "link",
    "localize",
    "outside_pairs",
    "outside_restriction_weight",
    "underlying_graph",
    "weight",
]
