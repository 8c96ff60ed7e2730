"""Deformation cones of graphical zonotopes, with exact oracles to check them."""

from .defcone import (
    ConeDescription,
    ConeStats,
    HeightVector,
    LinearForm,
    MembershipResult,
    NotInConeError,
    NotInSpanError,
    build_facet_witness,
    check_facet_witness,
    clique_basis_heights,
    contains,
    decompose_in_clique_basis,
    generate_irredundant_description,
    generate_redundant_description,
    stats,
    triangle_free_decompose,
)
from .geometry import support_of_zonotope, validate_polytope, vertex_of_orientation, vertices
from .graphcore import (
    Graph,
    GraphError,
    Orientation,
    SizeGuardError,
    chromatic_polynomial,
    enumerate_acyclic_orientations,
    enumerate_induced_cliques,
    is_triangle_free,
)
from .polyoracle import cones_equal, extreme_rays, facet_flags, is_facet, project_to_span

__version__ = "0.1.0"
