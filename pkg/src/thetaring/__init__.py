"""Theta-function structure constants for abelian-surface coordinate rings.

Evaluates two-variable theta-type lattice sums, realizes the graded rings
they weight (shear-2/shear-3 torus rings and the Kummer quotient), recovers
the classical Kummer quartic in P^3 from symplectic data, and generates and
verifies the 36 quadratic relations of the shear-3 deformation family.
"""

from . import errors
from .errors import (
    DegeneracyError,
    DomainError,
    ModelError,
    PrecisionError,
    SingularMatrixError,
    ThetaRingError,
    UsageError,
)
from .kummer import (
    GENERICITY_NAMES,
    QUARTIC_MONOMIALS,
    QuarticData,
    QuarticPolynomial,
    central_relation_residual,
    compute_ghjk,
    degree_one_elements,
    emit_quartic,
    expansion_basis,
    expansion_matrix,
    genericity_check,
    quartic_coefficients,
    quartic_combinations,
)
from .linalg import norm_inf, nullspace, rank, solve
from .rings import (
    RingElement,
    RingFamily,
    RingKind,
    generators,
    kummer_lift,
    kummer_project,
    product_kummer,
    product_torus,
)
from .sklyanin import (
    DeformationMatrix,
    FreeQuadratic,
    RelationSet,
    ThetaConstants,
    anticommutator_vector,
    build_deformation_matrix,
    commutator_vector,
    evaluate_in_ring,
    generate_and_verify,
    theta_constants,
)
from .theta import PeriodMatrix, ThetaArgs, Tolerance, theta_general, truncation_radius

__version__ = "0.1.0"

__all__ = [
    "DegeneracyError",
    "DomainError",
    "ModelError",
    "PrecisionError",
    "SingularMatrixError",
    "ThetaRingError",
    "UsageError",
    "GENERICITY_NAMES",
    "QUARTIC_MONOMIALS",
    "QuarticData",
    "QuarticPolynomial",
    "central_relation_residual",
    "compute_ghjk",
    "degree_one_elements",
    "emit_quartic",
    "expansion_basis",
    "expansion_matrix",
    "genericity_check",
    "quartic_coefficients",
    "quartic_combinations",
    "norm_inf",
    "nullspace",
    "rank",
    "solve",
    "RingElement",
    "RingFamily",
    "RingKind",
    "generators",
    "kummer_lift",
    "kummer_project",
    "product_kummer",
    "product_torus",
    "DeformationMatrix",
    "FreeQuadratic",
    "RelationSet",
    "ThetaConstants",
    "anticommutator_vector",
    "build_deformation_matrix",
    "commutator_vector",
    "evaluate_in_ring",
    "generate_and_verify",
    "theta_constants",
    "PeriodMatrix",
    "ThetaArgs",
    "Tolerance",
    "theta_general",
    "truncation_radius",
    "errors",
]
