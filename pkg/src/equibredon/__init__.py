"""Exact twisted Bredon-Illman cohomology for finite group actions on simplicial complexes."""

from .abelian import AbHom, FGAbelianGroup, cohomology_at
from .bredon import (
    assemble_complex,
    cohomology,
    coefficient_change_map,
    induced_cohomology_map,
    orbit_space_cohomology,
    pullback_cochain_map,
    transport_to_rep,
    verify_morita,
)
from .coeff import (
    CoefficientSystem,
    build_rep_system,
    check_natural_iso,
    compute_gamma,
    constant_system,
    evaluate,
    lift_edge_path,
    orbit_system,
    pullback,
    pushforward,
    sigma_right_inverse,
)
from .errors import ComputationError, EquiError, ValidationError, VerificationError
from .fundcat import ArrowWord, EdgeStep, FundObject, Relabel, Twist, build_presentation, compose_words, induced_functor
from .gcomplex import GComplex, SimplicialComplex, barycentric_subdivide, fixed_subcomplex, validate_gcomplex
from .groups import FiniteGroup, GroupHom, Subgroup, cyclic_group, direct_product, enumerate_subgroups, left_cosets
from .intmat import IntMatrix, smith_normal_form
from .morita import Bibundle, EquivariantFunctor, bibundle_from_functor, check_biprincipal, legs_as_functors
from .workspace import Workspace

__version__ = "0.1.0"

__all__ = [
    "AbHom",
    "ArrowWord",
    "Bibundle",
    "CoefficientSystem",
    "ComputationError",
    "EdgeStep",
    "EquiError",
    "EquivariantFunctor",
    "FGAbelianGroup",
    "FiniteGroup",
    "FundObject",
    "GComplex",
    "GroupHom",
    "IntMatrix",
    "Relabel",
    "SimplicialComplex",
    "Subgroup",
    "Twist",
    "ValidationError",
    "VerificationError",
    "Workspace",
    "assemble_complex",
    "barycentric_subdivide",
    "bibundle_from_functor",
    "build_presentation",
    "build_rep_system",
    "check_biprincipal",
    "check_natural_iso",
    "coefficient_change_map",
    "cohomology",
    "cohomology_at",
    "compose_words",
    "compute_gamma",
    "constant_system",
    "cyclic_group",
    "direct_product",
    "enumerate_subgroups",
    "evaluate",
    "fixed_subcomplex",
    "induced_cohomology_map",
    "induced_functor",
    "left_cosets",
    "legs_as_functors",
    "lift_edge_path",
    "orbit_space_cohomology",
    "orbit_system",
    "pullback",
    "pullback_cochain_map",
    "pushforward",
    "sigma_right_inverse",
    "smith_normal_form",
    "transport_to_rep",
    "validate_gcomplex",
    "verify_morita",
]
