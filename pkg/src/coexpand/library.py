"""Bundled example complexes."""

from __future__ import annotations

import random
from itertools import combinations

from .complexes import SimplicialComplex, build_complex

RP2_6_FACETS = [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
                (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)]


def point() -> SimplicialComplex:
    return build_complex([(0,)])


def triangle() -> SimplicialComplex:
    """A single filled 2-simplex."""
    return build_complex([(0, 1, 2)])


def cycle_graph(n: int = 3) -> SimplicialComplex:
    return build_complex([(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int = 3) -> SimplicialComplex:
    return build_complex([(i, i + 1) for i in range(n - 1)])


def boundary_of_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a triangulated (n-1)-sphere."""
    return build_complex(combinations(range(n + 1), n))


def rp2_6() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    return build_complex(RP2_6_FACETS)


def torus_7() -> SimplicialComplex:
    """Seven-vertex (Möbius) torus."""
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return build_complex(facets)


def disjoint_union(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    facets = [tuple(("a", v) for v in X.labeled(f)) for f in X.facets]
    facets += [tuple(("b", v) for v in Y.labeled(f)) for f in Y.facets]
    return build_complex(facets)


def random_2_complex(rng: random.Random, n_vertices: int = 6, p_triangle: float = 0.4,
                     p_edge: float = 0.5) -> SimplicialComplex:
    """Random 2-complex: random triangles plus random extra edges, all vertices kept."""
    verts = range(n_vertices)
    facets = [t for t in combinations(verts, 3) if rng.random() < p_triangle]
    facets += [e for e in combinations(verts, 2) if rng.random() < p_edge]
    facets += [(v,) for v in verts]
    if not any(len(f) == 3 for f in facets):
        facets.append((0, 1, 2))
    return build_complex(facets)


NAMED = {
    "point": point,
    "triangle": triangle,
    "cycle3": lambda: cycle_graph(3),
    "path3": lambda: path_graph(3),
    "delta3": lambda: boundary_of_simplex(3),
    "delta4": lambda: boundary_of_simplex(4),
    "rp2": rp2_6,
    "torus": torus_7,
}


def bundled_complexes(seed: int = 0) -> dict[str, SimplicialComplex]:
    """The ten complexes used by the total-unimodularity battery."""
    out = {name: NAMED[name]() for name in ("triangle", "delta3", "delta4", "rp2", "torus")}
    rng = random.Random(seed)
    for i in range(5):
        out[f"random{i}"] = random_2_complex(rng, n_vertices=rng.choice((5, 6, 7)))
    return out
