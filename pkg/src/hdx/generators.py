"""Named test complexes for the ``generate`` command and ``--gen`` flags."""

from __future__ import annotations

from itertools import product

from hdx.complex import SimplicialComplex, build_complex, complete_complex
from hdx.errors import InputError

FIXED = {
    "two_triangles": [((1, 2, 3), 1), ((1, 2, 4), 1)],
    "weighted_two_triangles": [((1, 2, 3), 1), ((1, 2, 4), 3)],
    "bowtie": [((0, 1, 2), 1), ((0, 3, 4), 1)],
}

SPECS = "complete:n:d, octahedron, " + ", ".join(sorted(FIXED))


def octahedron() -> SimplicialComplex:
    """Boundary of the 3-dimensional cross-polytope: 8 triangles on 6 vertices."""
    tops = [(a, 2 + b, 4 + c) for a, b, c in product((0, 1), repeat=3)]
    return build_complex([(t, 1) for t in tops])


def generate(spec: str) -> tuple[SimplicialComplex, str]:
    """Parse a generator spec and return (complex, name)."""
    text = spec.strip()
    if text.startswith("complete:"):
        parts = text.split(":")
        if len(parts) != 3 or not all(p.isdigit() for p in parts[1:]):
            raise InputError(f"malformed generator {spec!r}; expected complete:n:d")
        n, d = int(parts[1]), int(parts[2])
        if n <= d:
            raise InputError(f"complete:{n}:{d} needs n > d")
        return complete_complex(n, d), f"complete_{n}_{d}"
    if text == "octahedron":
        return octahedron(), text
    if text in FIXED:
        return build_complex(FIXED[text]), text
    raise InputError(f"unknown generator {spec!r}; known: {SPECS}")
