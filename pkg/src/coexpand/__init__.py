"""Exact l1 expansion constants of integer matrices and simplicial (co)boundary maps."""

from .complexes import (SimplicialComplex, boundary_matrix, build_complex, coboundary_matrix,
                        codim_expansion_constants, homology, manifold_check)
from .covers import VoltageAssignment, build_cover, cover_expansion_sweep
from .errors import CoexpandError
from .expansion import (L1Problem, combine_constants, exact_round, l1_min_int, l1_min_real,
                        tu_round, waist_constant, xi_int_at, xi_int_global, xi_int_probe,
                        xi_real_at, xi_real_global)
from .linalg_exact import Matrix, smith_normal_form
from .tu import BoundsBox, hk_vertex_integrality, is_totally_unimodular

__version__ = "0.1.0"

__all__ = [
    "BoundsBox", "CoexpandError", "L1Problem", "Matrix", "SimplicialComplex",
    "VoltageAssignment", "boundary_matrix", "build_complex", "build_cover",
    "coboundary_matrix", "codim_expansion_constants", "combine_constants",
    "cover_expansion_sweep", "exact_round", "hk_vertex_integrality", "homology",
    "is_totally_unimodular", "l1_min_int", "l1_min_real", "manifold_check",
    "smith_normal_form", "tu_round", "waist_constant", "xi_int_at", "xi_int_global",
    "xi_int_probe", "xi_real_at", "xi_real_global",
]
