"""Exact spectra of free group endomorphisms and of their restrictions to
finite-index invariant subgroups.

Polynomials are ``IntPoly`` values with ascending integer coefficients.
"""

from .errors import (
    BothZero,
    DegreeZero,
    EndospecError,
    InfiniteIndex,
    LengthBudgetExceeded,
    NotInSubgroup,
    NotInvariant,
    ParseError,
    PropertyViolation,
    RankMismatch,
    RankTooSmall,
    ShapeMismatch,
    UnknownGenerator,
    ZeroDivisor,
    ZeroPolynomial,
)
from .words import Endomorphism, Word, apply, compose, invert, multiply, power, reduce
from .graphs import (
    BasisWord,
    IndexResult,
    SubgroupGraph,
    build_graph,
    contains,
    expand,
    index,
    is_invariant,
    rewrite_in_basis,
    schreier_basis,
    transversal,
)
from .polynomials import (
    IntPoly,
    SpectrumPoly,
    all_roots_of_unity,
    divides,
    max_root_modulus,
    poly_gcd,
    radical,
    spectrum_poly,
    spectrum_subset,
)
from .linalg import IntMatrix, abelianization_matrix, char_poly, restriction, restriction_matrix
from .spectra import (
    CassonVerdict,
    ContainmentReport,
    EventualKernelData,
    casson_check,
    check_containment,
    check_lemma,
    eigen_spectrum,
    eventual_kernel,
    injective_part,
    is_injective,
)
from .torus import LaurentPoly, TorusPresentation, alexander_polynomial, fox_derivative, mapping_torus
from .growth import GrowthTrace, growth_estimate, growth_sequence
from .families import (
    RandomSpec,
    mod_n_homology_kernel,
    random_automorphism,
    random_endomorphism,
    random_non_injective,
    total_exponent_kernel,
    total_kernel_invariant,
)
from .dsl import ProblemSpec, format_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "BothZero",
    "DegreeZero",
    "EndospecError",
    "InfiniteIndex",
    "LengthBudgetExceeded",
    "NotInSubgroup",
    "NotInvariant",
    "ParseError",
    "PropertyViolation",
    "RankMismatch",
    "RankTooSmall",
    "ShapeMismatch",
    "UnknownGenerator",
    "ZeroDivisor",
    "ZeroPolynomial",
    "Endomorphism",
    "Word",
    "apply",
    "compose",
    "invert",
    "multiply",
    "power",
    "reduce",
    "BasisWord",
    "IndexResult",
    "SubgroupGraph",
    "build_graph",
    "contains",
    "expand",
    "index",
    "is_invariant",
    "rewrite_in_basis",
    "schreier_basis",
    "transversal",
    "IntPoly",
    "SpectrumPoly",
    "all_roots_of_unity",
    "divides",
    "max_root_modulus",
    "poly_gcd",
    "radical",
    "spectrum_poly",
    "spectrum_subset",
    "IntMatrix",
    "abelianization_matrix",
    "char_poly",
    "restriction",
    "restriction_matrix",
    "CassonVerdict",
    "ContainmentReport",
    "EventualKernelData",
    "casson_check",
    "check_containment",
    "check_lemma",
    "eigen_spectrum",
    "eventual_kernel",
    "injective_part",
    "is_injective",
    "LaurentPoly",
    "TorusPresentation",
    "alexander_polynomial",
    "fox_derivative",
    "mapping_torus",
    "GrowthTrace",
    "growth_estimate",
    "growth_sequence",
    "RandomSpec",
    "mod_n_homology_kernel",
    "random_automorphism",
    "random_endomorphism",
    "random_non_injective",
    "total_exponent_kernel",
    "total_kernel_invariant",
    "ProblemSpec",
    "format_spec",
    "parse_spec",
]
