"""Nits via state partitions: nit sets, prime-encoded context operators,
entanglement of partition eigenstates, unitary inverse problems and urn models."""

from nitpart.errors import (
    BudgetExceeded,
    CompositionError,
    DecodeError,
    NitError,
    ParameterError,
    ParseError,
    UnsupportedCase,
    ValidationError,
)
from nitpart.partitions import (
    NitParams,
    NitSet,
    Permutation,
    ValidityReport,
    apply_state_permutation,
    brute_force_nit_sets,
    canonical_nit_set,
    canonicalize,
    enumerate_nit_sets,
    find_mapping_permutations,
    is_valid_nit_set,
    parse_cycle_notation,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CompositionError",
    "DecodeError",
    "NitError",
    "NitParams",
    "NitSet",
    "ParameterError",
    "ParseError",
    "Permutation",
    "UnsupportedCase",
    "ValidationError",
    "ValidityReport",
    "apply_state_permutation",
    "brute_force_nit_sets",
    "canonical_nit_set",
    "canonicalize",
    "enumerate_nit_sets",
    "find_mapping_permutations",
    "is_valid_nit_set",
    "parse_cycle_notation",
]
