"""Pairing bounds in totally ordered commutative semigroups.

Sort 2n elements, pair them up, and ask when every pair can be kept
strictly below (or above) a bound. The symmetric pairing (1,2n)(2,2n-1)...
is always a safe choice: if any pairing meets the bound, the symmetric one
does, and it simultaneously minimizes the largest pair value and maximizes
the smallest. This package enumerates pairings, turns any feasible pairing
into the symmetric one through verifiable exchange steps, and cross-checks
the optimality claims by brute force.
"""

from .bounding import (
    DEFAULT_EXHAUSTIVE_CAP,
    BoundingInstance,
    Certificate,
    Direction,
    ExchangeStep,
    Justification,
    OptimalityReport,
    VerificationResult,
    document_to_certificate,
    dump_certificate,
    exchange_transform,
    feasible,
    load_certificate_document,
    maximin_matching,
    minimax_matching,
    optimality_report,
    theorem_check,
    verify_certificate,
)
from .errors import (
    CapExceededError,
    CarrierMismatchError,
    CertificateFormatError,
    DomainError,
    ElementParseError,
    InfeasibleWitnessError,
    IngestError,
    MatchingError,
    PairboundError,
    TheoremViolationError,
)
from .matching import (
    EvaluationRow,
    Matching,
    SortedInput,
    count_matchings,
    enumerate_matchings,
    evaluate,
    iter_pairings,
    sort_input,
    symmetric_matching,
)
from .semigroup import (
    INTEGER_ADD,
    POSITIVE_RATIONAL_MUL,
    RATIONAL_ADD,
    Carrier,
    CarrierKind,
    Element,
    LawCheckReport,
    carrier_from_token,
    check_monotonicity_law,
    combine,
    compare,
    natural_vector_lex_add,
    parse_element,
    random_element,
    run_law_samples,
    strictly_greater,
    strictly_less,
)

__version__ = "0.1.0"

__all__ = [
    "BoundingInstance",
    "CapExceededError",
    "Carrier",
    "CarrierKind",
    "CarrierMismatchError",
    "Certificate",
    "CertificateFormatError",
    "DEFAULT_EXHAUSTIVE_CAP",
    "Direction",
    "DomainError",
    "Element",
    "ElementParseError",
    "EvaluationRow",
    "ExchangeStep",
    "INTEGER_ADD",
    "InfeasibleWitnessError",
    "IngestError",
    "Justification",
    "LawCheckReport",
    "Matching",
    "MatchingError",
    "OptimalityReport",
    "POSITIVE_RATIONAL_MUL",
    "PairboundError",
    "RATIONAL_ADD",
    "SortedInput",
    "TheoremViolationError",
    "VerificationResult",
    "carrier_from_token",
    "check_monotonicity_law",
    "combine",
    "compare",
    "count_matchings",
    "document_to_certificate",
    "dump_certificate",
    "enumerate_matchings",
    "evaluate",
    "exchange_transform",
    "feasible",
    "iter_pairings",
    "load_certificate_document",
    "maximin_matching",
    "minimax_matching",
    "natural_vector_lex_add",
    "optimality_report",
    "parse_element",
    "random_element",
    "run_law_samples",
    "sort_input",
    "strictly_greater",
    "strictly_less",
    "symmetric_matching",
    "theorem_check",
    "verify_certificate",
]
