"""Finite group actions on surfaces and spheres, decided by exact computation."""

from .characters import (
    character_table,
    embeds_in_O,
    embeds_in_SO,
    frobenius_schur,
    frobenius_solution_count,
    min_faithful_SO_degree,
)
from .errors import (
    BudgetExceeded,
    GroupConstructionError,
    InternalError,
    ResourceError,
    TorsionObstructError,
    VerificationFailure,
)
from .expr import build_group, format_expr, parse_group
from .groups import (
    FiniteGroup,
    central_product,
    direct_product,
    is_isomorphic,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    semidirect_product,
)
from .presentation import parse_presentation, todd_coxeter
from .spheres import (
    MetacyclicParams,
    dirichlet_witness,
    embeds_in_SO3_classical,
    min_sphere_dim,
    s3_obstructed,
    s4_obstructed,
    so4_membership,
    sphere_report,
)
from .surfaces import (
    Signature,
    acts_on_genus,
    admissible_signatures,
    genus_spectrum,
    has_generating_vector,
    strong_symmetric_genus,
    verify_lemma_MZ,
)
from .symplectic import verify_witness

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "FiniteGroup",
    "GroupConstructionError",
    "InternalError",
    "MetacyclicParams",
    "ResourceError",
    "Signature",
    "TorsionObstructError",
    "VerificationFailure",
    "acts_on_genus",
    "admissible_signatures",
    "build_group",
    "central_product",
    "character_table",
    "direct_product",
    "dirichlet_witness",
    "embeds_in_O",
    "embeds_in_SO",
    "embeds_in_SO3_classical",
    "format_expr",
    "frobenius_schur",
    "frobenius_solution_count",
    "genus_spectrum",
    "has_generating_vector",
    "is_isomorphic",
    "make_cyclic",
    "make_dicyclic",
    "make_dihedral",
    "min_faithful_SO_degree",
    "min_sphere_dim",
    "parse_group",
    "parse_presentation",
    "s3_obstructed",
    "s4_obstructed",
    "semidirect_product",
    "so4_membership",
    "sphere_report",
    "strong_symmetric_genus",
    "todd_coxeter",
    "verify_lemma_MZ",
    "verify_witness",
]
