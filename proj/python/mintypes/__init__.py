"""Inhabitation and type checking for non-idempotent intersection types.

Terms, types and environments are strings in the same syntax the CLI reads,
e.g. ``inhabit("H", "", "[[a]->a]->[a]->a")``.
"""

from ._mintypes import (
    BudgetExceeded,
    Error,
    ParseError,
    PreconditionError,
    alpha_equal,
    approximants,
    brute_inhabit,
    canonical_env,
    canonical_term,
    canonical_type,
    check_derivation,
    degree,
    derivable,
    inhabit,
    normalize,
    systems,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "ParseError",
    "PreconditionError",
    "alpha_equal",
    "approximants",
    "brute_inhabit",
    "canonical_env",
    "canonical_term",
    "canonical_type",
    "check_derivation",
    "degree",
    "derivable",
    "inhabit",
    "normalize",
    "systems",
]
