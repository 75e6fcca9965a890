"""Exact-arithmetic toolkit for the degenerate affine Hecke algebra of GL_l.

Builds standard and simple modules from segment data, truncated highest-weight
modules of sl_n, the tensor functor connecting the two, and Kazhdan-Lusztig
multiplicity machinery, all over exact rational arithmetic.
"""

from .daha_core import HeckeElement, format_element, parse_element
from .errors import (
    DegreeOverflowError,
    HeckelieError,
    InternalInvariantError,
    PreconditionError,
    RankMismatchError,
    SplittingError,
    TruncationError,
)
from .functor import (
    classification_manifest,
    classify_simples,
    f_of_simple,
    f_of_verma,
    nonzero_condition,
    segments_from_pair,
)
from .category_o import (
    TruncatedOModule,
    f_lambda_direct,
    required_depth,
    simple_truncated,
    verma_truncated,
)
from .hecke_modules import (
    FinModule,
    Segment,
    SegmentSequence,
    central_character,
    check_relations,
    composition_factors,
    induce_standard,
    intertwiner_space,
    is_simple,
    iso_test,
    parse_segments,
    simple_quotient,
    zero_module,
)
from .kl_engine import (
    IntPolynomial,
    KLCache,
    grothendieck_simple_image,
    kl_polynomial,
    multiplicity,
)
from .root_weyl import (
    Permutation,
    Weight,
    bruhat_leq,
    dot_action,
    parse_permutation,
    parse_weight,
    symmetric_group,
    tensor_weight_decompose,
)
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "HeckeElement",
    "format_element",
    "parse_element",
    "HeckelieError",
    "PreconditionError",
    "RankMismatchError",
    "TruncationError",
    "InternalInvariantError",
    "DegreeOverflowError",
    "SplittingError",
    "classification_manifest",
    "classify_simples",
    "f_of_simple",
    "f_of_verma",
    "nonzero_condition",
    "segments_from_pair",
    "TruncatedOModule",
    "f_lambda_direct",
    "required_depth",
    "simple_truncated",
    "verma_truncated",
    "FinModule",
    "Segment",
    "SegmentSequence",
    "central_character",
    "check_relations",
    "composition_factors",
    "induce_standard",
    "intertwiner_space",
    "is_simple",
    "iso_test",
    "parse_segments",
    "simple_quotient",
    "zero_module",
    "IntPolynomial",
    "KLCache",
    "grothendieck_simple_image",
    "kl_polynomial",
    "multiplicity",
    "Permutation",
    "Weight",
    "bruhat_leq",
    "dot_action",
    "parse_permutation",
    "parse_weight",
    "symmetric_group",
    "tensor_weight_decompose",
    "SUITES",
    "run_suite",
    "__version__",
]
