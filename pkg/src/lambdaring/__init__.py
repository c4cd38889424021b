"""Exact cohomology and deformation calculus for lambda-rings.

A lambda-ring enters as a finite-rank free Z-algebra with one integer
matrix per prime describing its Adams operations.  On top of that data
the library builds the cochain complex of the Adams action, computes
degree-zero and degree-one cohomology as finitely generated abelian
groups with printable representatives, and decides order-by-order
extension and equivalence questions for formal deformations of the
Adams family.  All arithmetic is exact.
"""

from .cochain import (
    Cochain,
    IDENTITY_NAMES,
    IdentityReport,
    codegeneracy,
    coface,
    differential,
    endo_cochain,
    factored_box,
    make_table_cochain,
    random_cochain,
    random_endomorphism,
    run_identity_check,
    sample_tuples,
    table_cochain_from_dict,
    table_cochain_to_dict,
    zero_cochain,
)
from .cohomology import (
    DerivationSpec,
    H0Result,
    H1Class,
    H1Result,
    cocycle_space_basis,
    compute_H0,
    compute_H1,
    extend_derivation,
    frobenius_compatible_basis,
    inner_derivation,
    is_derivation,
    solve_coboundary_1,
)
from .deformation import (
    Deformation,
    DeformationReport,
    ExtensionResult,
    FormalAutomorphism,
    apply_automorphism,
    check_equivalent_extensions,
    deformation_from_dict,
    deformation_to_dict,
    infinitesimal,
    make_deformation,
    normalize,
    obstruction,
    trivial_deformation,
    try_extend,
    verify_deformation,
)
from .errors import (
    ConfigParseError,
    ContextMismatch,
    DivisibilityViolation,
    InconsistentDerivation,
    LimitExceeded,
    NonIntegralDivision,
    NotCoboundary,
    NotFrobeniusCompatible,
    PrefixMismatch,
    UnknownPreset,
    UnknownPrime,
)
from .exactalg import (
    AbelianGroup,
    IntMatrix,
    LinearSolution,
    SmithDecomposition,
    determinant,
    kernel_basis,
    quotient_presentation,
    quotient_with_generators,
    smith_normal_form,
    solve_linear,
)
from .rings import (
    AdamsFamily,
    DEFAULT_PRIMES,
    FactoredInt,
    LambdaData,
    PRESET_NAMES,
    PrimeUniverse,
    RingSpec,
    adams_from_lambda,
    family_from_dict,
    family_to_dict,
    frobenius_compatible,
    lambda_from_adams,
    load_ring_file,
    preset_family,
    verify_adams,
    verify_ring,
)
from .symfun import (
    DEFAULT_COMPOSITION_LIMIT,
    MultiPoly,
    UniversalPolynomial,
    compute_P,
    compute_P_ij,
    verify_lambda_axioms,
)

__all__ = [
    "AbelianGroup",
    "AdamsFamily",
    "Cochain",
    "ConfigParseError",
    "ContextMismatch",
    "DEFAULT_COMPOSITION_LIMIT",
    "DEFAULT_PRIMES",
    "Deformation",
    "DeformationReport",
    "DerivationSpec",
    "DivisibilityViolation",
    "ExtensionResult",
    "FactoredInt",
    "FormalAutomorphism",
    "H0Result",
    "H1Class",
    "H1Result",
    "IDENTITY_NAMES",
    "IdentityReport",
    "InconsistentDerivation",
    "IntMatrix",
    "LambdaData",
    "LimitExceeded",
    "LinearSolution",
    "MultiPoly",
    "NonIntegralDivision",
    "NotCoboundary",
    "NotFrobeniusCompatible",
    "PRESET_NAMES",
    "PrefixMismatch",
    "PrimeUniverse",
    "RingSpec",
    "SmithDecomposition",
    "UniversalPolynomial",
    "UnknownPreset",
    "UnknownPrime",
    "adams_from_lambda",
    "apply_automorphism",
    "check_equivalent_extensions",
    "cocycle_space_basis",
    "codegeneracy",
    "coface",
    "compute_H0",
    "compute_H1",
    "compute_P",
    "compute_P_ij",
    "deformation_from_dict",
    "deformation_to_dict",
    "determinant",
    "differential",
    "endo_cochain",
    "extend_derivation",
    "factored_box",
    "family_from_dict",
    "family_to_dict",
    "frobenius_compatible",
    "frobenius_compatible_basis",
    "infinitesimal",
    "inner_derivation",
    "is_derivation",
    "kernel_basis",
    "lambda_from_adams",
    "load_ring_file",
    "make_deformation",
    "make_table_cochain",
    "normalize",
    "obstruction",
    "preset_family",
    "quotient_presentation",
    "quotient_with_generators",
    "random_cochain",
    "random_endomorphism",
    "run_identity_check",
    "sample_tuples",
    "smith_normal_form",
    "solve_coboundary_1",
    "solve_linear",
    "table_cochain_from_dict",
    "table_cochain_to_dict",
    "trivial_deformation",
    "try_extend",
    "verify_adams",
    "verify_deformation",
    "verify_lambda_axioms",
    "verify_ring",
    "zero_cochain",
]
