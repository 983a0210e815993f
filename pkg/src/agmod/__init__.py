"""Exact filtration invariants of M = coker(phi) over a polynomial model of
a regular local ring: Hilbert data, superficial reductions, Ratliff-Rush
lengths, and the depth of the associated graded module."""

from .analysis import Analysis, analyze
from .errors import (
    AgmodError,
    InputError,
    NeedLargerTruncation,
    SuperficialSearchFailed,
    TruncationExhausted,
)
from .invariants import DvrDecomposition, HData, dvr_decomposition, predicates
from .instancefile import InstanceFile, load_instance, parse_instance, serialize_instance
from .model import TruncatedModule, build, default_truncation, verify_truncation_stability
from .polynomials import DEFAULT_CHAR, FieldSpec, Poly, mul_truncated, parse, poly_to_str
from .presentation import Presentation, quotient_by_form
from .ratliff import RRData, decomposition_residual, ratliff_rush
from .superficial import (
    VerifiedForm,
    find_phi_superficial,
    find_superficial,
    superficial_chain,
    superficial_sequence,
)
from .theorems import THEOREM_IDS, TheoremVerdict, family_for, run_suite

__all__ = [
    "Analysis",
    "AgmodError",
    "DEFAULT_CHAR",
    "DvrDecomposition",
    "FieldSpec",
    "HData",
    "InputError",
    "InstanceFile",
    "NeedLargerTruncation",
    "Poly",
    "Presentation",
    "RRData",
    "SuperficialSearchFailed",
    "THEOREM_IDS",
    "TheoremVerdict",
    "TruncatedModule",
    "TruncationExhausted",
    "VerifiedForm",
    "analyze",
    "build",
    "decomposition_residual",
    "default_truncation",
    "dvr_decomposition",
    "family_for",
    "find_phi_superficial",
    "find_superficial",
    "load_instance",
    "mul_truncated",
    "parse",
    "parse_instance",
    "poly_to_str",
    "predicates",
    "quotient_by_form",
    "ratliff_rush",
    "run_suite",
    "serialize_instance",
    "superficial_chain",
    "superficial_sequence",
    "verify_truncation_stability",
]

__version__ = "0.1.0"
